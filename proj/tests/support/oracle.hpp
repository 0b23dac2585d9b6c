// Test-only helpers: exact rational checks and small random generators.
#ifndef FINRES_TEST_ORACLE_HPP
#define FINRES_TEST_ORACLE_HPP

#include "finres/combin.hpp"
#include "finres/graph.hpp"
#include "finres/interval.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace finres::testing {

// mpq_class is constructed exactly from a finite double.
inline mpq_class exact(double x) { return mpq_class(x); }

inline bool encloses(const OInterval& r, const mpq_class& v)
{
    return exact(r.lo()) < v && v < exact(r.hi());
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::mt19937_64& engine() { return gen_; }

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(gen_); }
    std::uint64_t below(std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(gen_); }
    bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(gen_); }

    // Magnitudes spread over many binades, with occasional zeros, small
    // integers and values close to the subnormal range.
    double wild()
    {
        switch (below(8)) {
        case 0:
            return 0.0;
        case 1:
            return static_cast<double>(static_cast<std::int64_t>(below(21)) - 10);
        case 2:
            return std::ldexp(uniform(-1, 1), -static_cast<int>(below(1040)));
        default: {
            const int e = static_cast<int>(below(80)) - 40;
            return std::ldexp(uniform(-1, 1), e);
        }
        }
    }

    OInterval interval()
    {
        for (;;) {
            double a = wild();
            double b = coin(0.3) ? std::nextafter(a, a + 1.0) : wild();
            if (a > b) {
                std::swap(a, b);
            }
            if (a < b) {
                return OInterval(a, b);
            }
        }
    }

    // A point of the open interval, sometimes right next to an endpoint.
    mpq_class point_in(const OInterval& x)
    {
        const mpq_class lo = exact(x.lo());
        const mpq_class hi = exact(x.hi());
        switch (below(4)) {
        case 0:
            return lo + (hi - lo) / mpq_class(1 << 20);
        case 1:
            return hi - (hi - lo) / mpq_class(1 << 20);
        default: {
            const mpq_class t(static_cast<long>(below(999) + 1), 1000);
            return lo + t * (hi - lo);
        }
        }
    }

private:
    std::mt19937_64 gen_;
};

// Random digraph with n vertices, each edge present with probability p.
inline DiGraph random_graph(Rng& rng, std::size_t n, double p)
{
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t u = 0; u < n; ++u) {
        for (std::uint32_t v = 0; v < n; ++v) {
            if (rng.coin(p)) {
                edges.emplace_back(u, v);
            }
        }
    }
    return DiGraph::from_edges(n, edges);
}

inline DiGraph cycle_graph(std::size_t k)
{
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::uint32_t u = 0; u < k; ++u) {
        edges.emplace_back(u, static_cast<std::uint32_t>((u + 1) % k));
    }
    return DiGraph::from_edges(k, edges);
}

// Strongly connected combinatorial map: a Hamiltonian cycle through a
// random permutation plus random extra arrows.
inline CombMap random_strong_map(Rng& rng, std::size_t n, double extra)
{
    std::vector<CombMap::Index> perm(n);
    for (std::size_t i = 0; i < n; ++i) {
        perm[i] = static_cast<CombMap::Index>(i);
    }
    std::shuffle(perm.begin(), perm.end(), rng.engine());
    std::vector<std::vector<CombMap::Index>> img(n);
    for (std::size_t i = 0; i < n; ++i) {
        img[perm[i]].push_back(perm[(i + 1) % n]);
    }
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) {
            if (rng.coin(extra)) {
                img[u].push_back(static_cast<CombMap::Index>(v));
            }
        }
    }
    return CombMap(std::move(img));
}

} // namespace finres::testing

#endif
