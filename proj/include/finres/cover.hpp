#ifndef FINRES_COVER_HPP
#define FINRES_COVER_HPP

#include "finres/interval.hpp"

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace finres {

// Default overlap margin: the smallest positive normal binary64 number.
inline constexpr double default_kappa = std::numeric_limits<double>::min();

// Regular grid of overlapping open boxes over B = prod (a_i, a_i + w_i).
// Box k along axis i is (a_i + k w_i / p_i, a_i + (k+1) w_i / p_i + kappa),
// with both endpoints rounded outward.
class GridSpec {
public:
    // p is given for every axis. Throws domain_error when the margin is not
    // strictly below every cell width (the cover would not be essential).
    GridSpec(std::vector<double> a, std::vector<double> w, std::vector<std::uint64_t> p,
             double kappa);

    std::size_t dim() const noexcept { return a_.size(); }
    const std::vector<double>& lower() const noexcept { return a_; }
    const std::vector<double>& widths() const noexcept { return w_; }
    const std::vector<std::uint64_t>& counts() const noexcept { return p_; }
    double kappa() const noexcept { return kappa_; }

    // Total number of candidate boxes, prod p_i.
    std::uint64_t cell_count() const noexcept { return cells_; }

    double axis_lo(std::size_t axis, std::uint64_t k) const;
    double axis_hi(std::size_t axis, std::uint64_t k) const;

    // Upper end of B along an axis, rounded down.
    double region_hi(std::size_t axis) const { return region_hi_[axis]; }
    ORect region() const;

    friend bool operator==(const GridSpec& x, const GridSpec& y)
    {
        return x.a_ == y.a_ && x.w_ == y.w_ && x.p_ == y.p_ && x.kappa_ == y.kappa_;
    }

private:
    std::vector<double> a_;
    std::vector<double> w_;
    std::vector<std::uint64_t> p_;
    double kappa_;
    std::uint64_t cells_ = 1;
    std::vector<double> region_hi_;
};

// Grid with p_1 given and p_i = round(p_1 w_i / w_1), ties to even.
GridSpec grid_new(std::vector<double> a, std::vector<double> w, std::uint64_t p1,
                  double kappa = default_kappa);

struct BoxId {
    std::vector<std::uint64_t> k;

    friend bool operator==(const BoxId&, const BoxId&) = default;
    friend auto operator<=>(const BoxId&, const BoxId&) = default;
};

// Row-major: the last axis varies fastest.
std::uint64_t linear_index(const GridSpec& g, const BoxId& id);
BoxId box_from_linear(const GridSpec& g, std::uint64_t linear);

ORect box_bounds(const GridSpec& g, const BoxId& id);

// Inclusive per-axis index range; first > last means empty.
struct IndexRange {
    std::uint64_t first = 1;
    std::uint64_t last = 0;

    bool empty() const noexcept { return first > last; }
    std::uint64_t size() const noexcept { return empty() ? 0 : last - first + 1; }
};

// Indices k whose open axis interval meets (lo, hi); lo == hi selects the
// boxes containing that coordinate.
IndexRange axis_range(const GridSpec& g, std::size_t axis, double lo, double hi);

// Boxes whose open bounds strictly contain x, in row-major order.
std::vector<BoxId> boxes_containing_point(const GridSpec& g, std::span<const double> x);

struct RectHits {
    std::vector<BoxId> boxes;
    bool inside = false;
};

// Boxes open-intersecting r (row-major order). `inside` reports r within B.
RectHits boxes_intersecting_rect(const GridSpec& g, const ORect& r);
bool rect_inside_region(const GridSpec& g, const ORect& r);

double outer_resolution_cover(const GridSpec& g, Metric metric);
double inner_resolution_bound(const GridSpec& g);
double thickness_bound(const GridSpec& g);

// ---------------------------------------------------------------------------
// One-dimensional covers whose elements are finite unions of open intervals
// with rational endpoints. Used to run the essentialization procedure in
// exact arithmetic.

struct OpenSet1D {
    // Sorted, pairwise disjoint, nonempty open intervals.
    std::vector<std::pair<mpq_class, mpq_class>> parts;

    bool empty() const noexcept { return parts.empty(); }
    bool contains(const mpq_class& x) const;
    bool closure_contains(const mpq_class& x) const;
    // Sup distance between points, 0 for the empty set.
    mpq_class diameter() const;
    // Remove the closed interval [lo, hi].
    void subtract_closed(const mpq_class& lo, const mpq_class& hi);
};

using IntervalCover1D = std::vector<OInterval>;
using UnionCover1D = std::vector<OpenSet1D>;

UnionCover1D to_union_cover(const IntervalCover1D& c);

// True iff every element keeps a nonempty interior after removing the
// closure of the union of all other elements.
bool is_essential_1d(const UnionCover1D& c);
bool is_essential_1d(const IntervalCover1D& c);

// Ordered essentialization of a cover of an interval. Empty elements are
// dropped from the result. Throws domain_error when the input does not
// cover an interval.
UnionCover1D essentialize_1d(const IntervalCover1D& c);

mpq_class outer_resolution_1d(const UnionCover1D& c);

} // namespace finres

#endif
