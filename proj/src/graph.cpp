#include "finres/graph.hpp"

#include "finres/error.hpp"

#ifdef __linux__
#include <sys/mman.h>
#endif

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <memory>
#include <numeric>

namespace finres {

template <class Index>
BasicDiGraph<Index>::BasicDiGraph(std::vector<std::uint64_t> offsets, std::vector<Index> targets)
    : offsets_(std::move(offsets)), targets_(std::move(targets))
{
    if (offsets_.empty() || offsets_.front() != 0 || offsets_.back() != targets_.size()) {
        throw domain_error("malformed adjacency offsets");
    }
    for (std::size_t i = 1; i < offsets_.size(); ++i) {
        if (offsets_[i] < offsets_[i - 1]) {
            throw domain_error("adjacency offsets not monotone");
        }
    }
    const std::size_t n = offsets_.size() - 1;
    if (n > std::numeric_limits<Index>::max()) {
        throw budget_exceeded("vertex count exceeds the index width");
    }
    for (Index t : targets_) {
        if (t >= n) {
            throw domain_error("edge target out of range");
        }
    }
}

template <class Index>
BasicDiGraph<Index> BasicDiGraph<Index>::from_edges(std::size_t n,
                                                    std::span<const std::pair<Index, Index>> edges)
{
    std::vector<std::uint64_t> offsets(n + 1, 0);
    for (const auto& [u, v] : edges) {
        if (u >= n || v >= n) {
            throw domain_error("edge endpoint out of range");
        }
        ++offsets[u + 1];
    }
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    std::vector<Index> targets(edges.size());
    std::vector<std::uint64_t> fill(offsets.begin(), offsets.end() - 1);
    for (const auto& [u, v] : edges) {
        targets[fill[u]++] = v;
    }
    return BasicDiGraph(std::move(offsets), std::move(targets));
}

DiGraph graph_from_comb(const CombMap& f)
{
    std::vector<std::uint64_t> offsets{0};
    std::vector<std::uint32_t> targets;
    targets.reserve(f.edge_count());
    for (std::size_t u = 0; u < f.size(); ++u) {
        const auto img = f.image(u);
        targets.insert(targets.end(), img.begin(), img.end());
        offsets.push_back(targets.size());
    }
    return DiGraph(std::move(offsets), std::move(targets));
}

namespace {

// Per-vertex DFS state is read at random; on large graphs backing it with
// huge pages removes most TLB misses.
template <class T>
struct LargeArrayAllocator {
    using value_type = T;
    static constexpr std::size_t huge_page = std::size_t{2} << 20;

    LargeArrayAllocator() = default;
    template <class U>
    LargeArrayAllocator(const LargeArrayAllocator<U>&) noexcept {}

    T* allocate(std::size_t n)
    {
        const std::size_t bytes = n * sizeof(T);
        if (bytes < huge_page) {
            return std::allocator<T>().allocate(n);
        }
        const std::size_t rounded = (bytes + huge_page - 1) / huge_page * huge_page;
        void* p = std::aligned_alloc(huge_page, rounded);
        if (p == nullptr) {
            throw std::bad_alloc();
        }
#ifdef __linux__
        madvise(p, rounded, MADV_HUGEPAGE);
#endif
        return static_cast<T*>(p);
    }

    void deallocate(T* p, std::size_t n) noexcept
    {
        if (n * sizeof(T) < huge_page) {
            std::allocator<T>().deallocate(p, n);
        } else {
            std::free(p);
        }
    }

    template <class U>
    bool operator==(const LargeArrayAllocator<U>&) const noexcept
    {
        return true;
    }
};

template <class T>
using LargeArray = std::vector<T, LargeArrayAllocator<T>>;

// Large random graphs spend most of the DFS waiting on per-vertex state.
// When a frame finishes, the frames below it resume in order; fetch the
// state behind the pending edges of the one `prefetch_depth` levels down.
constexpr std::size_t prefetch_depth = 4;
constexpr std::uint64_t prefetch_edges = 8;

template <class Frame, class Index, class State>
inline void prefetch_pending(const LargeArray<Frame>& calls, const std::vector<std::uint64_t>& offsets,
                             const std::vector<Index>& targets, const State* state)
{
    if (calls.size() <= prefetch_depth) {
        return;
    }
    const Frame& f = calls[calls.size() - 1 - prefetch_depth];
    const std::uint64_t end = std::min(offsets[f.vertex + 1], f.next_edge + prefetch_edges);
    for (std::uint64_t e = f.next_edge; e < end; ++e) {
        __builtin_prefetch(state + targets[e]);
    }
}

// Per-vertex Tarjan state packed together so a visit touches one cache line.
// A vertex is on the SCC stack iff 0 < time < done: assigning a component
// sets time to `done`, which also keeps it out of every low-link update.
template <class Index, bool WithDepth>
struct TarjanSlot {
    static constexpr Index done = std::numeric_limits<Index>::max();
    Index time;  // discovery time, 0 = undefined
    Index low;
};

template <class Index>
struct TarjanSlot<Index, true> {
    static constexpr Index done = std::numeric_limits<Index>::max();
    Index time;
    Index low;
    Index depth;  // depth in the DFS tree
};

template <class Index>
struct Frame {
    Index vertex;
    std::uint64_t next_edge;
};

// Tarjan's algorithm. With `period` set, also accumulates the gcd of
// depth(u) + 1 - depth(v) over the edges of the DFS from vertex 0, which
// equals graph_period_unchecked: that function walks the same tree in the
// same edge order.
template <class Index, bool WithDepth>
SccResult<Index> tarjan_impl(const BasicDiGraph<Index>& g, std::uint64_t* period)
{
    using Slot = TarjanSlot<Index, WithDepth>;
    const std::size_t n = g.vertex_count();
    if (n >= Slot::done) {
        throw budget_exceeded("vertex count leaves no room for discovery times");
    }
    LargeArray<Slot> slot(n, Slot{});
    LargeArray<Index> scc_stack;
    LargeArray<Frame<Index>> calls;
    SccResult<Index> result;
    result.component.assign(n, 0);
    Index time = 0;
    std::uint64_t p = 0;
    const auto& offsets = g.offsets();
    const auto& targets = g.targets();

    for (std::size_t root = 0; root < n; ++root) {
        if (slot[root].time != 0) {
            continue;
        }
        auto visit = [&](Index u) {
            ++time;
            slot[u].time = time;
            slot[u].low = time;
            if constexpr (WithDepth) {
                slot[u].depth = static_cast<Index>(calls.size());
            }
            scc_stack.push_back(u);
            calls.push_back({u, offsets[u]});
        };
        visit(static_cast<Index>(root));

        while (!calls.empty()) {
            Frame<Index>& top = calls.back();
            const Index u = top.vertex;
            if (top.next_edge < offsets[u + 1]) {
                const Index v = targets[top.next_edge++];
                if (slot[v].time == 0) {
                    visit(v);
                    continue;
                }
                if (slot[v].time < slot[u].low) {
                    slot[u].low = slot[v].time;
                }
                if constexpr (WithDepth) {
                    const std::uint64_t du = slot[u].depth + std::uint64_t{1};
                    const std::uint64_t dv = slot[v].depth;
                    const std::uint64_t d = du > dv ? du - dv : dv - du;
                    if (p != 1 && (p == 0 || d % p != 0)) {
                        p = std::gcd(p, d);
                    }
                }
                continue;
            }
            // u is finished: return to its caller
            calls.pop_back();
            prefetch_pending(calls, offsets, targets, slot.data());
            const Index low = slot[u].low;
            if (low == slot[u].time) {
                const auto id = static_cast<Index>(result.count++);
                Index w;
                do {
                    w = scc_stack.back();
                    scc_stack.pop_back();
                    slot[w].time = Slot::done;
                    result.component[w] = id;
                } while (w != u);
            }
            if (!calls.empty()) {
                const Index parent = calls.back().vertex;
                if (low < slot[parent].low) {
                    slot[parent].low = low;
                }
            }
        }
    }
    if (period != nullptr) {
        *period = p;
    }
    return result;
}

} // namespace

template <class Index>
SccResult<Index> tarjan_scc(const BasicDiGraph<Index>& g)
{
    return tarjan_impl<Index, false>(g, nullptr);
}

template <class Index>
bool strongly_connected(const BasicDiGraph<Index>& g)
{
    if (g.vertex_count() == 0) {
        return false;
    }
    return tarjan_scc(g).count == 1;
}

template <class Index>
std::uint64_t graph_period_unchecked(const BasicDiGraph<Index>& g)
{
    const std::size_t n = g.vertex_count();
    if (n == 0) {
        throw contract_violation("graph period of an empty graph");
    }
    // Depths are below n, so they fit the index type.
    constexpr Index undefined = std::numeric_limits<Index>::max();
    LargeArray<Index> depth(n, undefined);
    LargeArray<Frame<Index>> calls;
    const auto& offsets = g.offsets();
    const auto& targets = g.targets();
    std::uint64_t p = 0;

    depth[0] = 0;
    calls.push_back({0, offsets[0]});
    while (!calls.empty()) {
        Frame<Index>& top = calls.back();
        const Index u = top.vertex;
        if (top.next_edge == offsets[u + 1]) {
            calls.pop_back();
            prefetch_pending(calls, offsets, targets, depth.data());
            continue;
        }
        const Index v = targets[top.next_edge++];
        if (depth[v] != undefined) {
            const std::uint64_t du = depth[u] + std::uint64_t{1};
            const std::uint64_t d = du > depth[v] ? du - depth[v] : depth[v] - du;
            if (p != 1 && (p == 0 || d % p != 0)) {
                p = std::gcd(p, d);
            }
        } else {
            depth[v] = depth[u] + 1;
            calls.push_back({v, offsets[v]});
        }
    }
    return p;
}

template <class Index>
std::uint64_t graph_period(const BasicDiGraph<Index>& g)
{
    if (!strongly_connected(g)) {
        throw contract_violation("graph period requires a strongly connected graph");
    }
    return graph_period_unchecked(g);
}

template <class Index>
GraphVerdict analyze(const BasicDiGraph<Index>& g)
{
    GraphVerdict v;
    if (g.vertex_count() == 0) {
        return v;
    }
    std::uint64_t period = 0;
    v.scc_count = tarjan_impl<Index, true>(g, &period).count;
    v.transitive = v.scc_count == 1;
    if (v.transitive) {
        v.period = period;
        v.mixing = v.period == 1;
    }
    return v;
}

template class BasicDiGraph<std::uint32_t>;
template class BasicDiGraph<std::uint64_t>;
template SccResult<std::uint32_t> tarjan_scc(const DiGraph&);
template SccResult<std::uint64_t> tarjan_scc(const DiGraph64&);
template bool strongly_connected(const DiGraph&);
template bool strongly_connected(const DiGraph64&);
template std::uint64_t graph_period(const DiGraph&);
template std::uint64_t graph_period(const DiGraph64&);
template std::uint64_t graph_period_unchecked(const DiGraph&);
template std::uint64_t graph_period_unchecked(const DiGraph64&);
template GraphVerdict analyze(const DiGraph&);
template GraphVerdict analyze(const DiGraph64&);

} // namespace finres
