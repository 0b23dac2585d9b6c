#ifndef FINRES_CONSTRUCT_HPP
#define FINRES_CONSTRUCT_HPP

#include "finres/cover.hpp"
#include "finres/dynmap.hpp"
#include "finres/graph.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <variant>
#include <vector>

namespace finres {

enum class SeenSetMode { automatic, dense, hashed };

struct BuildOptions {
    Metric metric = Metric::euclidean;
    std::uint64_t memory_budget = std::uint64_t{4} << 30;
    unsigned workers = 1;
    SeenSetMode seen_set = SeenSetMode::automatic;
    // Report every this many processed boxes; 0 disables progress output.
    std::uint64_t progress_interval = 0;
    // Defaults to a line on standard error.
    std::function<void(std::uint64_t processed, std::uint64_t discovered)> progress;
};

struct BuildStats {
    std::uint64_t boxes = 0;
    std::uint64_t edges = 0;
    double seconds = 0;
    bool dense_seen_set = false;
    // Estimated bytes held at the end of construction.
    std::uint64_t memory_bytes = 0;
};

// The constructed cover U (grid boxes in discovery order, stored as linear
// grid indices) and the combinatorial map F : U -o U as a graph over
// positions in that list.
template <class Index>
struct BasicRepresentation {
    GridSpec grid;
    std::vector<std::uint64_t> cover;
    BasicDiGraph<Index> graph;
    // Upper bound on max over U of diam U and diam |F(U)|.
    double r_plus = 0;
    BuildStats stats;

    BoxId box(std::size_t v) const { return box_from_linear(grid, cover.at(v)); }
};

using Representation = BasicRepresentation<std::uint32_t>;
using Representation64 = BasicRepresentation<std::uint64_t>;

// The image enclosure of `box` left the region B.
struct ConstructionFailure {
    BoxId box;
    ORect image;
};

template <class Index>
using BuildResult = std::variant<BasicRepresentation<Index>, ConstructionFailure>;

// Grows U from the boxes containing x0: boxes are processed in list order,
// each box's image enclosure is intersected with the grid and unseen boxes
// are appended to the end of the list, until the list is exhausted.
// Image evaluation may be spread over `workers` threads; results are
// committed in list order, so the output does not depend on the worker
// count. Throws budget_exceeded when the memory estimate passes the budget
// or the cover outgrows the index type.
template <class Index = std::uint32_t>
BuildResult<Index> build(const GridSpec& g, const MapSpec& m, std::span<const double> x0,
                         const BuildOptions& opt = {});

// Full second pass: recomputes every image and checks that the stored
// adjacency lists equal the boxes meeting the enclosures, all of which must
// lie in the cover.
template <class Index>
bool verify_closure(const BasicRepresentation<Index>& rep, const MapSpec& m);

template <class Index>
bool resolution_certificate(const BasicRepresentation<Index>& rep, double eps)
{
    return rep.r_plus <= eps;
}

// Extra bytes the graph algorithms allocate on top of the graph itself.
template <class Index>
std::uint64_t analysis_memory_estimate(std::uint64_t vertices)
{
    return vertices * (2 * sizeof(Index) + 8 + 2 * sizeof(Index) + 16);
}

} // namespace finres

#endif
