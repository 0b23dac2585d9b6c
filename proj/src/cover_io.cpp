#include "finres/cover_io.hpp"

#include "finres/error.hpp"
#include "finres/hexfloat.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace finres {

std::string_view to_string(Metric m)
{
    return m == Metric::euclidean ? "euclidean" : "max";
}

Metric parse_metric(std::string_view s)
{
    if (s == "euclidean") {
        return Metric::euclidean;
    }
    if (s == "max") {
        return Metric::max;
    }
    throw domain_error("unknown metric '" + std::string(s) + "'");
}

void write_cover(std::ostream& os, const GridSpec& g, Metric metric,
                 std::span<const std::uint64_t> cover)
{
    const std::size_t d = g.dim();
    os << "dim " << d;
    for (auto p : g.counts()) {
        os << ' ' << p;
    }
    os << ' ' << format_hex(g.kappa()) << ' ' << to_string(metric) << '\n';
    os << "region";
    for (std::size_t i = 0; i < d; ++i) {
        os << ' ' << format_hex(g.lower()[i]) << ' ' << format_hex(g.widths()[i]);
    }
    os << '\n';
    std::string line;
    for (const std::uint64_t linear : cover) {
        const BoxId id = box_from_linear(g, linear);
        line = std::to_string(linear);
        for (auto k : id.k) {
            line += ' ';
            line += std::to_string(k);
        }
        for (std::size_t i = 0; i < d; ++i) {
            line += ' ';
            line += format_hex(g.axis_lo(i, id.k[i]));
            line += ' ';
            line += format_hex(g.axis_hi(i, id.k[i]));
        }
        line += '\n';
        os << line;
    }
}

namespace {

std::vector<std::string> tokens(const std::string& line)
{
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string t; in >> t;) {
        out.push_back(std::move(t));
    }
    return out;
}

std::uint64_t to_count(const std::string& t, std::size_t line)
{
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(t, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != t.size() || t.empty() || t[0] == '-') {
        throw parse_error(line, "expected a nonnegative integer, got '" + t + "'");
    }
    return v;
}

double to_real(const std::string& t, std::size_t line)
{
    try {
        return parse_real(t);
    } catch (const domain_error&) {
        throw parse_error(line, "expected a real number, got '" + t + "'");
    }
}

} // namespace

CoverFile read_cover(std::istream& is)
{
    std::string line;
    std::size_t lineno = 1;
    if (!std::getline(is, line)) {
        throw parse_error(lineno, "missing 'dim' header");
    }
    auto head = tokens(line);
    if (head.size() < 2 || head[0] != "dim") {
        throw parse_error(lineno, "expected 'dim <n> <p_1> ... <p_n> <kappa> <metric>'");
    }
    const std::uint64_t d = to_count(head[1], lineno);
    if (d == 0 || head.size() != d + 4) {
        throw parse_error(lineno, "header length does not match the dimension");
    }
    std::vector<std::uint64_t> p;
    for (std::size_t i = 0; i < d; ++i) {
        p.push_back(to_count(head[2 + i], lineno));
    }
    const double kappa = to_real(head[2 + d], lineno);
    Metric metric;
    try {
        metric = parse_metric(head[3 + d]);
    } catch (const domain_error& e) {
        throw parse_error(lineno, e.what());
    }

    ++lineno;
    if (!std::getline(is, line)) {
        throw parse_error(lineno, "missing 'region' line");
    }
    auto reg = tokens(line);
    if (reg.size() != 2 * d + 1 || reg[0] != "region") {
        throw parse_error(lineno, "expected 'region <a_1> <w_1> ...'");
    }
    std::vector<double> a, w;
    for (std::size_t i = 0; i < d; ++i) {
        a.push_back(to_real(reg[1 + 2 * i], lineno));
        w.push_back(to_real(reg[2 + 2 * i], lineno));
    }
    CoverFile out{[&] {
                      try {
                          return GridSpec(a, w, p, kappa);
                      } catch (const std::exception& e) {
                          throw parse_error(lineno, e.what());
                      }
                  }(),
                  metric,
                  {}};

    while (std::getline(is, line)) {
        ++lineno;
        const auto tok = tokens(line);
        if (tok.empty()) {
            continue;
        }
        if (tok.size() != 1 + 3 * d) {
            throw parse_error(lineno, "box line has the wrong number of fields");
        }
        const std::uint64_t linear = to_count(tok[0], lineno);
        if (linear >= out.grid.cell_count()) {
            throw parse_error(lineno, "linear index out of range");
        }
        const BoxId id = box_from_linear(out.grid, linear);
        for (std::size_t i = 0; i < d; ++i) {
            if (to_count(tok[1 + i], lineno) != id.k[i]) {
                throw parse_error(lineno, "box index disagrees with the linear index");
            }
            const double lo = to_real(tok[1 + d + 2 * i], lineno);
            const double hi = to_real(tok[2 + d + 2 * i], lineno);
            if (lo != out.grid.axis_lo(i, id.k[i]) || hi != out.grid.axis_hi(i, id.k[i])) {
                throw parse_error(lineno, "box bounds disagree with the grid");
            }
        }
        out.cover.push_back(linear);
    }
    return out;
}

} // namespace finres
