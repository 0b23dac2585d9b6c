#ifndef FINRES_GRAPH_HPP
#define FINRES_GRAPH_HPP

#include "finres/combin.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

namespace finres {

// Directed graph in compressed sparse row layout. Adjacency order is the
// order in which edges were supplied.
template <class Index>
class BasicDiGraph {
public:
    using index_type = Index;

    BasicDiGraph() : offsets_{0} {}
    // Validates offsets (monotone, offsets[0] == 0, back == targets.size())
    // and targets (< n).
    BasicDiGraph(std::vector<std::uint64_t> offsets, std::vector<Index> targets);

    static BasicDiGraph from_edges(std::size_t n, std::span<const std::pair<Index, Index>> edges);

    std::size_t vertex_count() const noexcept { return offsets_.size() - 1; }
    std::size_t edge_count() const noexcept { return targets_.size(); }

    std::span<const Index> successors(std::size_t u) const
    {
        return {targets_.data() + offsets_[u], targets_.data() + offsets_[u + 1]};
    }

    const std::vector<std::uint64_t>& offsets() const noexcept { return offsets_; }
    const std::vector<Index>& targets() const noexcept { return targets_; }

    std::size_t memory_bytes() const noexcept
    {
        return offsets_.size() * sizeof(std::uint64_t) + targets_.size() * sizeof(Index);
    }

    friend bool operator==(const BasicDiGraph&, const BasicDiGraph&) = default;

private:
    std::vector<std::uint64_t> offsets_;
    std::vector<Index> targets_;
};

using DiGraph = BasicDiGraph<std::uint32_t>;
using DiGraph64 = BasicDiGraph<std::uint64_t>;

DiGraph graph_from_comb(const CombMap& f);

template <class Index>
struct SccResult {
    std::vector<Index> component;  // component id per vertex
    std::size_t count = 0;
};

// Tarjan's algorithm with an explicit stack; O(|V| + |E|).
template <class Index>
SccResult<Index> tarjan_scc(const BasicDiGraph<Index>& g);

template <class Index>
bool strongly_connected(const BasicDiGraph<Index>& g);

// GCD of all cycle lengths of a strongly connected graph (0 when there is
// no cycle). Throws contract_violation if g is not strongly connected.
template <class Index>
std::uint64_t graph_period(const BasicDiGraph<Index>& g);

// Same without the strong connectivity check. Depths are assigned by a
// DFS from vertex 0; every edge to an already visited vertex contributes
// |d_v - d_u - 1| to the running GCD.
template <class Index>
std::uint64_t graph_period_unchecked(const BasicDiGraph<Index>& g);

template <class Index>
bool is_transitive(const BasicDiGraph<Index>& g)
{
    return strongly_connected(g);
}

template <class Index>
bool is_mixing(const BasicDiGraph<Index>& g)
{
    return strongly_connected(g) && graph_period_unchecked(g) == 1;
}

struct GraphVerdict {
    std::size_t scc_count = 0;
    std::uint64_t period = 0;  // only meaningful when transitive
    bool transitive = false;
    bool mixing = false;
};

// A single DFS computing both the components and, when strongly
// connected, the period.
template <class Index>
GraphVerdict analyze(const BasicDiGraph<Index>& g);

// Edge-list text format:
//   vertices <n> edges <m>
//   <u> <v>          (m lines, adjacency order)
template <class Index>
void write_edge_list(std::ostream& os, const BasicDiGraph<Index>& g);

// Throws parse_error with the offending line number.
template <class Index>
BasicDiGraph<Index> read_edge_list(std::istream& is);

// ---------------------------------------------------------------------------
// Oracles for small graphs (n <= 64), independent of the DFS algorithms.

inline constexpr std::size_t oracle_max_vertices = 64;

// Component labels from the boolean reachability closure: vertices share a
// label iff they are mutually reachable. Labels are the smallest member.
std::vector<std::size_t> oracle_components(const DiGraph& g);

// GCD of { l <= n : trace(A^l) != 0 } over boolean adjacency powers.
std::uint64_t oracle_period(const DiGraph& g);

// Some boolean adjacency power A^k, k <= (n-1)^2 + 1, is all ones.
bool oracle_mixing(const CombMap& f);
bool oracle_mixing(const DiGraph& g);

} // namespace finres

#endif
