#include "finres/construct.hpp"

#include "finres/error.hpp"

#include <algorithm>
#include <chrono>
#include <iostream>
#include <limits>
#include <thread>
#include <unordered_map>

namespace finres {

namespace {

// Approximate per-entry cost of std::unordered_map<uint64_t, Index>.
constexpr std::uint64_t hashed_entry_bytes = 48;

// Maps linear grid indices to vertex ids.
template <class Index>
class SeenSet {
public:
    static constexpr Index absent = std::numeric_limits<Index>::max();

    SeenSet(const GridSpec& g, SeenSetMode mode, std::uint64_t budget)
    {
        const std::uint64_t dense_bytes = g.cell_count() * sizeof(Index);
        dense_ = mode == SeenSetMode::dense ||
                 (mode == SeenSetMode::automatic && dense_bytes <= budget / 8 &&
                  dense_bytes <= (std::uint64_t{1} << 30));
        if (dense_) {
            if (dense_bytes > budget) {
                throw budget_exceeded("dense seen-set does not fit the memory budget");
            }
            table_.assign(g.cell_count(), absent);
        }
    }

    bool dense() const noexcept { return dense_; }

    Index find(std::uint64_t linear) const
    {
        if (dense_) {
            return table_[linear];
        }
        const auto it = map_.find(linear);
        return it == map_.end() ? absent : it->second;
    }

    void insert(std::uint64_t linear, Index id)
    {
        if (dense_) {
            table_[linear] = id;
        } else {
            map_.emplace(linear, id);
        }
    }

    std::uint64_t memory_bytes() const noexcept
    {
        return dense_ ? table_.size() * sizeof(Index) : map_.size() * hashed_entry_bytes;
    }

private:
    bool dense_ = false;
    std::vector<Index> table_;
    std::unordered_map<std::uint64_t, Index> map_;
};

struct ImageInfo {
    bool inside = false;
    double diam = 0;
};

// Image enclosure of one box, reduced to per-axis index ranges.
void image_of(const GridSpec& g, const MapSpec& m, Metric metric, std::uint64_t linear,
              IndexRange* ranges, ImageInfo& info)
{
    const ORect box = box_bounds(g, box_from_linear(g, linear));
    const ORect img = eval_box(m, box);
    info.inside = rect_inside_region(g, img);
    if (!info.inside) {
        return;
    }
    std::vector<OInterval> hull;
    hull.reserve(g.dim());
    for (std::size_t i = 0; i < g.dim(); ++i) {
        ranges[i] = axis_range(g, i, img[i].lo(), img[i].hi());
        hull.emplace_back(g.axis_lo(i, ranges[i].first), g.axis_hi(i, ranges[i].last));
    }
    info.diam = std::max(rect_diam(box, metric), rect_diam(ORect(std::move(hull)), metric));
}

// Calls fn(linear) for every box of the range product in row-major order.
template <class Fn>
void for_each_box(const GridSpec& g, const IndexRange* ranges, Fn&& fn)
{
    const std::size_t d = g.dim();
    std::vector<std::uint64_t> k(d);
    for (std::size_t i = 0; i < d; ++i) {
        k[i] = ranges[i].first;
    }
    for (;;) {
        std::uint64_t linear = 0;
        for (std::size_t i = 0; i < d; ++i) {
            linear = linear * g.counts()[i] + k[i];
        }
        fn(linear);
        std::size_t i = d;
        while (i-- > 0) {
            if (k[i] < ranges[i].last) {
                ++k[i];
                break;
            }
            k[i] = ranges[i].first;
        }
        if (i == static_cast<std::size_t>(-1)) {
            return;
        }
    }
}

template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn)
{
    if (workers <= 1 || count < 2 * workers) {
        for (std::size_t i = 0; i < count; ++i) {
            fn(i);
        }
        return;
    }
    std::vector<std::jthread> pool;
    const std::size_t chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) {
            break;
        }
        pool.emplace_back([&fn, begin, end] {
            for (std::size_t i = begin; i < end; ++i) {
                fn(i);
            }
        });
    }
}

} // namespace

template <class Index>
BuildResult<Index> build(const GridSpec& g, const MapSpec& m, std::span<const double> x0,
                         const BuildOptions& opt)
{
    if (g.dim() != m.dim()) {
        throw domain_error("grid dimension does not match the map");
    }
    const auto start = std::chrono::steady_clock::now();
    const std::size_t d = g.dim();
    const unsigned workers = std::max(1u, opt.workers);
    const std::size_t batch_size = workers == 1 ? 1024 : std::size_t{16384} * workers;
    constexpr std::uint64_t max_vertices = std::numeric_limits<Index>::max() - 1;

    SeenSet<Index> seen(g, opt.seen_set, opt.memory_budget);
    std::vector<std::uint64_t> cover;
    std::vector<std::uint64_t> offsets{0};
    std::vector<Index> targets;

    for (const auto& id : boxes_containing_point(g, x0)) {
        const std::uint64_t linear = linear_index(g, id);
        seen.insert(linear, static_cast<Index>(cover.size()));
        cover.push_back(linear);
    }

    auto report = [&](std::uint64_t processed) {
        if (opt.progress) {
            opt.progress(processed, cover.size());
        } else {
            std::cerr << "construct: processed " << processed << " boxes, discovered " << cover.size()
                      << '\n';
        }
    };

    double r_plus = 0;
    std::vector<IndexRange> ranges;
    std::vector<ImageInfo> infos;
    std::size_t head = 0;
    std::uint64_t next_report = opt.progress_interval;

    while (head < cover.size()) {
        const std::size_t count = std::min(batch_size, cover.size() - head);
        ranges.assign(count * d, IndexRange{});
        infos.assign(count, ImageInfo{});
        parallel_for(count, workers, [&](std::size_t i) {
            image_of(g, m, opt.metric, cover[head + i], &ranges[i * d], infos[i]);
        });

        // Commit in list order.
        for (std::size_t i = 0; i < count; ++i) {
            const std::uint64_t linear = cover[head + i];
            if (!infos[i].inside) {
                const BoxId id = box_from_linear(g, linear);
                return ConstructionFailure{id, eval_box(m, box_bounds(g, id))};
            }
            r_plus = std::max(r_plus, infos[i].diam);
            for_each_box(g, &ranges[i * d], [&](std::uint64_t t) {
                Index v = seen.find(t);
                if (v == SeenSet<Index>::absent) {
                    if (cover.size() >= max_vertices) {
                        throw budget_exceeded("cover outgrew the vertex index width");
                    }
                    v = static_cast<Index>(cover.size());
                    seen.insert(t, v);
                    cover.push_back(t);
                }
                targets.push_back(v);
            });
            offsets.push_back(targets.size());
        }
        head += count;

        const std::uint64_t bytes = seen.memory_bytes() + cover.size() * 8 + offsets.size() * 8 +
                                    targets.size() * sizeof(Index);
        if (bytes > opt.memory_budget) {
            throw budget_exceeded("construction exceeded the memory budget of " +
                                  std::to_string(opt.memory_budget) + " bytes");
        }
        if (opt.progress_interval != 0 && head >= next_report) {
            report(head);
            while (next_report <= head) {
                next_report += opt.progress_interval;
            }
        }
    }

    BasicRepresentation<Index> rep{
        g, std::move(cover), BasicDiGraph<Index>(std::move(offsets), std::move(targets)), r_plus, {}};
    rep.stats.boxes = rep.cover.size();
    rep.stats.edges = rep.graph.edge_count();
    rep.stats.dense_seen_set = seen.dense();
    rep.stats.memory_bytes = seen.memory_bytes() + rep.cover.size() * 8 + rep.graph.memory_bytes();
    rep.stats.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
}

template <class Index>
bool verify_closure(const BasicRepresentation<Index>& rep, const MapSpec& m)
{
    const GridSpec& g = rep.grid;
    std::unordered_map<std::uint64_t, std::uint64_t> position;
    position.reserve(rep.cover.size());
    for (std::size_t v = 0; v < rep.cover.size(); ++v) {
        if (!position.emplace(rep.cover[v], v).second) {
            return false;  // duplicate box
        }
    }
    std::vector<IndexRange> ranges(g.dim());
    for (std::size_t v = 0; v < rep.cover.size(); ++v) {
        ImageInfo info;
        image_of(g, m, Metric::max, rep.cover[v], ranges.data(), info);
        if (!info.inside) {
            return false;
        }
        const auto succ = rep.graph.successors(v);
        std::size_t j = 0;
        bool ok = true;
        for_each_box(g, ranges.data(), [&](std::uint64_t t) {
            const auto it = position.find(t);
            if (it == position.end() || j >= succ.size() || succ[j] != it->second) {
                ok = false;
            }
            ++j;
        });
        if (!ok || j != succ.size()) {
            return false;
        }
    }
    return true;
}

template BuildResult<std::uint32_t> build(const GridSpec&, const MapSpec&, std::span<const double>,
                                          const BuildOptions&);
template BuildResult<std::uint64_t> build(const GridSpec&, const MapSpec&, std::span<const double>,
                                          const BuildOptions&);
template bool verify_closure(const Representation&, const MapSpec&);
template bool verify_closure(const Representation64&, const MapSpec&);

} // namespace finres
