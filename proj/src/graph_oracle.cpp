#include "finres/error.hpp"
#include "finres/graph.hpp"

#include <bit>
#include <numeric>

namespace finres {

namespace {

using Rows = std::vector<std::uint64_t>;

Rows adjacency_rows(const DiGraph& g)
{
    if (g.vertex_count() > oracle_max_vertices) {
        throw domain_error("graph too large for the oracle");
    }
    Rows rows(g.vertex_count(), 0);
    for (std::size_t u = 0; u < g.vertex_count(); ++u) {
        for (auto v : g.successors(u)) {
            rows[u] |= std::uint64_t{1} << v;
        }
    }
    return rows;
}

Rows multiply(const Rows& a, const Rows& b)
{
    Rows c(a.size(), 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (a[i] >> k & 1) {
                c[i] |= b[k];
            }
        }
    }
    return c;
}

} // namespace

std::vector<std::size_t> oracle_components(const DiGraph& g)
{
    Rows reach = adjacency_rows(g);
    const std::size_t n = reach.size();
    for (std::size_t i = 0; i < n; ++i) {
        reach[i] |= std::uint64_t{1} << i;
    }
    // Warshall closure
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (reach[i] >> k & 1) {
                reach[i] |= reach[k];
            }
        }
    }
    std::vector<std::size_t> label(n);
    for (std::size_t i = 0; i < n; ++i) {
        label[i] = i;
        for (std::size_t j = 0; j < i; ++j) {
            if ((reach[i] >> j & 1) && (reach[j] >> i & 1)) {
                label[i] = j;
                break;
            }
        }
    }
    return label;
}

std::uint64_t oracle_period(const DiGraph& g)
{
    const Rows a = adjacency_rows(g);
    const std::size_t n = a.size();
    Rows power = a;
    std::uint64_t p = 0;
    for (std::size_t len = 1; len <= n; ++len) {
        if (len > 1) {
            power = multiply(power, a);
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (power[i] >> i & 1) {
                p = std::gcd(p, static_cast<std::uint64_t>(len));
                break;
            }
        }
    }
    return p;
}

bool oracle_mixing(const DiGraph& g)
{
    const Rows a = adjacency_rows(g);
    const std::size_t n = a.size();
    if (n == 0) {
        return false;
    }
    const std::uint64_t full = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
    const std::size_t bound = (n - 1) * (n - 1) + 1;
    Rows power = a;
    for (std::size_t k = 1; k <= bound; ++k) {
        if (k > 1) {
            power = multiply(power, a);
        }
        bool all = true;
        for (auto row : power) {
            all = all && row == full;
        }
        if (all) {
            return true;
        }
    }
    return false;
}

bool oracle_mixing(const CombMap& f) { return oracle_mixing(graph_from_comb(f)); }

} // namespace finres
