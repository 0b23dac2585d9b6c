#include "finres/cover.hpp"

#include "finres/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace finres {

using namespace rounding;

GridSpec::GridSpec(std::vector<double> a, std::vector<double> w, std::vector<std::uint64_t> p,
                   double kappa)
    : a_(std::move(a)), w_(std::move(w)), p_(std::move(p)), kappa_(kappa)
{
    if (a_.empty() || a_.size() != w_.size() || a_.size() != p_.size()) {
        throw domain_error("grid needs matching, nonempty a, w and p vectors");
    }
    if (!std::isfinite(kappa_) || !(kappa_ > 0)) {
        throw domain_error("overlap margin must be positive");
    }
    for (std::size_t i = 0; i < dim(); ++i) {
        if (!std::isfinite(a_[i]) || !std::isfinite(w_[i]) || !(w_[i] > 0)) {
            throw domain_error("region widths must be positive and finite");
        }
        if (p_[i] < 1 || p_[i] > (std::uint64_t{1} << 52)) {
            throw domain_error("subdivision count out of range on axis " + std::to_string(i));
        }
        if (!(kappa_ < div_down(w_[i], static_cast<double>(p_[i])))) {
            throw domain_error("margin too large: kappa must be below w_i/p_i on axis " +
                               std::to_string(i));
        }
        if (cells_ > std::numeric_limits<std::uint64_t>::max() / p_[i]) {
            throw domain_error("grid has more than 2^64 cells");
        }
        cells_ *= p_[i];
        region_hi_.push_back(add_down(a_[i], w_[i]));
    }
}

double GridSpec::axis_lo(std::size_t axis, std::uint64_t k) const
{
    const double offset =
        div_down(mul_down(static_cast<double>(k), w_[axis]), static_cast<double>(p_[axis]));
    return add_down(a_[axis], offset);
}

double GridSpec::axis_hi(std::size_t axis, std::uint64_t k) const
{
    const double offset =
        div_up(mul_up(static_cast<double>(k + 1), w_[axis]), static_cast<double>(p_[axis]));
    return add_up(add_up(a_[axis], offset), kappa_);
}

ORect GridSpec::region() const
{
    std::vector<OInterval> axes;
    for (std::size_t i = 0; i < dim(); ++i) {
        axes.emplace_back(a_[i], region_hi_[i]);
    }
    return ORect(std::move(axes));
}

GridSpec grid_new(std::vector<double> a, std::vector<double> w, std::uint64_t p1, double kappa)
{
    if (w.empty()) {
        throw domain_error("grid needs at least one axis");
    }
    if (p1 < 1) {
        throw domain_error("p1 must be at least 1");
    }
    if (!(w[0] > 0)) {
        throw domain_error("region widths must be positive");
    }
    std::vector<std::uint64_t> p{p1};
    for (std::size_t i = 1; i < w.size(); ++i) {
        // nearbyint honours the default round-half-even mode
        const double pi = std::nearbyint(static_cast<double>(p1) * w[i] / w[0]);
        p.push_back(static_cast<std::uint64_t>(std::max(1.0, pi)));
    }
    return GridSpec(std::move(a), std::move(w), std::move(p), kappa);
}

std::uint64_t linear_index(const GridSpec& g, const BoxId& id)
{
    if (id.k.size() != g.dim()) {
        throw domain_error("box id dimension mismatch");
    }
    std::uint64_t idx = 0;
    for (std::size_t i = 0; i < g.dim(); ++i) {
        if (id.k[i] >= g.counts()[i]) {
            throw domain_error("box index out of range");
        }
        idx = idx * g.counts()[i] + id.k[i];
    }
    return idx;
}

BoxId box_from_linear(const GridSpec& g, std::uint64_t linear)
{
    if (linear >= g.cell_count()) {
        throw domain_error("linear box index out of range");
    }
    BoxId id{std::vector<std::uint64_t>(g.dim())};
    for (std::size_t i = g.dim(); i-- > 0;) {
        id.k[i] = linear % g.counts()[i];
        linear /= g.counts()[i];
    }
    return id;
}

ORect box_bounds(const GridSpec& g, const BoxId& id)
{
    if (id.k.size() != g.dim()) {
        throw domain_error("box id dimension mismatch");
    }
    std::vector<OInterval> axes;
    axes.reserve(g.dim());
    for (std::size_t i = 0; i < g.dim(); ++i) {
        if (id.k[i] >= g.counts()[i]) {
            throw domain_error("box index out of range");
        }
        axes.emplace_back(g.axis_lo(i, id.k[i]), g.axis_hi(i, id.k[i]));
    }
    return ORect(std::move(axes));
}

namespace {

std::int64_t guess_index(const GridSpec& g, std::size_t axis, double x)
{
    const double p = static_cast<double>(g.counts()[axis]);
    double t = std::floor((x - g.lower()[axis]) / g.widths()[axis] * p);
    t = std::clamp(t, 0.0, p - 1);
    return static_cast<std::int64_t>(t);
}

} // namespace

IndexRange axis_range(const GridSpec& g, std::size_t axis, double lo, double hi)
{
    const auto p = static_cast<std::int64_t>(g.counts()[axis]);

    // last: largest k with axis_lo(k) < hi (axis_lo is monotone in k)
    std::int64_t last = guess_index(g, axis, hi);
    while (last + 1 < p && g.axis_lo(axis, last + 1) < hi) {
        ++last;
    }
    while (last >= 0 && !(g.axis_lo(axis, last) < hi)) {
        --last;
    }

    // first: smallest k with axis_hi(k) > lo
    std::int64_t first = guess_index(g, axis, lo);
    while (first > 0 && g.axis_hi(axis, first - 1) > lo) {
        --first;
    }
    while (first < p && !(g.axis_hi(axis, first) > lo)) {
        ++first;
    }

    if (last < 0 || first >= p || first > last) {
        return {};
    }
    return {static_cast<std::uint64_t>(first), static_cast<std::uint64_t>(last)};
}

namespace {

std::vector<BoxId> enumerate(const std::vector<IndexRange>& ranges)
{
    std::vector<BoxId> out;
    for (const auto& r : ranges) {
        if (r.empty()) {
            return out;
        }
    }
    BoxId cur;
    for (const auto& r : ranges) {
        cur.k.push_back(r.first);
    }
    for (;;) {
        out.push_back(cur);
        std::size_t i = ranges.size();
        while (i-- > 0) {
            if (cur.k[i] < ranges[i].last) {
                ++cur.k[i];
                break;
            }
            cur.k[i] = ranges[i].first;
        }
        if (i == static_cast<std::size_t>(-1)) {
            return out;
        }
    }
}

} // namespace

std::vector<BoxId> boxes_containing_point(const GridSpec& g, std::span<const double> x)
{
    if (x.size() != g.dim()) {
        throw domain_error("point dimension mismatch");
    }
    std::vector<IndexRange> ranges;
    for (std::size_t i = 0; i < g.dim(); ++i) {
        // exact test for a_i < x_i < a_i + w_i
        if (!(x[i] > g.lower()[i]) || !(x[i] < add_up(g.lower()[i], g.widths()[i]))) {
            throw domain_error("point outside the grid region");
        }
        ranges.push_back(axis_range(g, i, x[i], x[i]));
    }
    return enumerate(ranges);
}

bool rect_inside_region(const GridSpec& g, const ORect& r)
{
    if (r.dim() != g.dim()) {
        throw domain_error("rectangle dimension mismatch");
    }
    for (std::size_t i = 0; i < g.dim(); ++i) {
        if (r[i].lo() < g.lower()[i] || r[i].hi() > g.region_hi(i)) {
            return false;
        }
    }
    return true;
}

RectHits boxes_intersecting_rect(const GridSpec& g, const ORect& r)
{
    RectHits hits;
    hits.inside = rect_inside_region(g, r);
    std::vector<IndexRange> ranges;
    for (std::size_t i = 0; i < g.dim(); ++i) {
        ranges.push_back(axis_range(g, i, r[i].lo(), r[i].hi()));
    }
    hits.boxes = enumerate(ranges);
    return hits;
}

double outer_resolution_cover(const GridSpec& g, Metric metric)
{
    // Every computed endpoint is within a few ulps of magnitude
    // |a_i| + w_i + kappa of its exact value; 16 ulps covers both ends.
    double acc = 0.0;
    for (std::size_t i = 0; i < g.dim(); ++i) {
        const double cell = add_up(div_up(g.widths()[i], static_cast<double>(g.counts()[i])),
                                   g.kappa());
        const double mag = add_up(add_up(std::fabs(g.lower()[i]), g.widths()[i]), g.kappa());
        const double slack = mul_up(16.0, mul_up(mag, std::numeric_limits<double>::epsilon()));
        const double width = add_up(cell, slack);
        acc = metric == Metric::max ? std::max(acc, width) : add_up(acc, mul_up(width, width));
    }
    return metric == Metric::max ? acc : sqrt_up(acc);
}

double inner_resolution_bound(const GridSpec& g) { return div_down(g.kappa(), 2.0); }

double thickness_bound(const GridSpec& g)
{
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < g.dim(); ++i) {
        const double cell = add_down(div_down(g.widths()[i], static_cast<double>(g.counts()[i])),
                                     g.kappa());
        best = std::min(best, div_down(cell, 2.0));
    }
    return best;
}

} // namespace finres
