#include "finres/error.hpp"
#include "finres/graph.hpp"

#include <charconv>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

namespace finres {

template <class Index>
void write_edge_list(std::ostream& os, const BasicDiGraph<Index>& g)
{
    os << "vertices " << g.vertex_count() << " edges " << g.edge_count() << '\n';
    std::string line;
    for (std::size_t u = 0; u < g.vertex_count(); ++u) {
        for (Index v : g.successors(u)) {
            line.clear();
            line += std::to_string(u);
            line += ' ';
            line += std::to_string(v);
            line += '\n';
            os << line;
        }
    }
}

namespace {

std::uint64_t parse_count(std::string_view tok, std::size_t line)
{
    std::uint64_t v = 0;
    const auto* end = tok.data() + tok.size();
    const auto [ptr, ec] = std::from_chars(tok.data(), end, v);
    if (ec != std::errc() || ptr != end || tok.empty()) {
        throw parse_error(line, "expected a nonnegative integer, got '" + std::string(tok) + "'");
    }
    return v;
}

std::vector<std::string_view> split(std::string_view s)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) {
            ++i;
        }
        const std::size_t start = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') {
            ++i;
        }
        if (i > start) {
            out.push_back(s.substr(start, i - start));
        }
    }
    return out;
}

} // namespace

template <class Index>
BasicDiGraph<Index> read_edge_list(std::istream& is)
{
    std::string line;
    std::size_t lineno = 0;
    if (!std::getline(is, line)) {
        throw parse_error(1, "missing header 'vertices <n> edges <m>'");
    }
    ++lineno;
    const auto head = split(line);
    if (head.size() != 4 || head[0] != "vertices" || head[2] != "edges") {
        throw parse_error(lineno, "expected header 'vertices <n> edges <m>'");
    }
    const std::uint64_t n = parse_count(head[1], lineno);
    const std::uint64_t m = parse_count(head[3], lineno);
    if (n > std::numeric_limits<Index>::max()) {
        throw parse_error(lineno, "vertex count exceeds the index width");
    }

    std::vector<std::pair<Index, Index>> edges;
    edges.reserve(m);
    while (std::getline(is, line)) {
        ++lineno;
        const auto tok = split(line);
        if (tok.empty()) {
            continue;
        }
        if (tok.size() != 2) {
            throw parse_error(lineno, "expected '<u> <v>'");
        }
        const std::uint64_t u = parse_count(tok[0], lineno);
        const std::uint64_t v = parse_count(tok[1], lineno);
        if (u >= n || v >= n) {
            throw parse_error(lineno, "vertex index out of range");
        }
        edges.emplace_back(static_cast<Index>(u), static_cast<Index>(v));
    }
    if (edges.size() != m) {
        throw parse_error(lineno, "header announces " + std::to_string(m) + " edges, found " +
                                      std::to_string(edges.size()));
    }
    return BasicDiGraph<Index>::from_edges(n, edges);
}

template void write_edge_list(std::ostream&, const DiGraph&);
template void write_edge_list(std::ostream&, const DiGraph64&);
template DiGraph read_edge_list(std::istream&);
template DiGraph64 read_edge_list(std::istream&);

} // namespace finres
