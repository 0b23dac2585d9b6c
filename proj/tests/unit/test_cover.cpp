#include "finres/cover.hpp"
#include "finres/error.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <algorithm>

using namespace finres;
using finres::testing::exact;

namespace {

GridSpec random_grid(testing::Rng& rng, std::size_t dim)
{
    std::vector<double> a, w;
    for (std::size_t i = 0; i < dim; ++i) {
        a.push_back(rng.uniform(-3, 3));
        w.push_back(rng.uniform(0.1, 4));
    }
    const std::uint64_t p1 = 1 + rng.below(40);
    const double kappa = rng.coin() ? default_kappa : rng.uniform(0, 1) * w[0] / (4.0 * 40);
    return grid_new(a, w, p1, std::max(kappa, default_kappa));
}

} // namespace

TEST_CASE("cell counts follow the aspect ratio with ties to even")
{
    const GridSpec h = grid_new({-1.4, -0.5}, {2.8, 1.0}, 446);
    CHECK(h.counts() == std::vector<std::uint64_t>{446, 159});
    CHECK(h.cell_count() == 446u * 159u);
    CHECK(grid_new({0, 0}, {2, 1}, 3).counts()[1] == 2);  // 1.5
    CHECK(grid_new({0, 0}, {2, 1}, 5).counts()[1] == 2);  // 2.5
    CHECK(grid_new({0, 0}, {2, 1}, 7).counts()[1] == 4);  // 3.5
    CHECK(grid_new({0, 0}, {2, 1}, 1).counts()[1] == 1);  // 0.5 clamps to one cell
}

TEST_CASE("grid validation")
{
    CHECK_THROWS_AS(grid_new({0}, {1}, 0), domain_error);
    CHECK_THROWS_AS(grid_new({0}, {-1}, 4), domain_error);
    CHECK_THROWS_AS(grid_new({0}, {1}, 4, 0.25), domain_error);
    CHECK_THROWS_AS(grid_new({0}, {1}, 4, 0.0), domain_error);
    CHECK_NOTHROW(grid_new({0}, {1}, 4, 0.24));
    CHECK_THROWS_AS(GridSpec({0, 0}, {1}, {1, 1}, default_kappa), domain_error);
}

TEST_CASE("box bounds of a small grid")
{
    const GridSpec g = grid_new({0.0}, {1.0}, 4);
    CHECK(g.axis_lo(0, 0) == 0.0);
    CHECK(g.axis_lo(0, 1) == 0.25);
    CHECK(g.axis_hi(0, 0) == std::nextafter(0.25, 1.0));  // 1/4 + kappa rounds up
    CHECK(g.axis_hi(0, 3) > 1.0);
    CHECK(g.region_hi(0) == 1.0);
}

TEST_CASE("linear index round trip, last axis fastest")
{
    const GridSpec g = grid_new({0, 0, 0}, {1, 2, 3}, 5);
    CHECK(g.counts() == std::vector<std::uint64_t>{5, 10, 15});
    CHECK(linear_index(g, BoxId{{0, 0, 1}}) == 1);
    CHECK(linear_index(g, BoxId{{0, 1, 0}}) == 15);
    CHECK(linear_index(g, BoxId{{1, 0, 0}}) == 150);
    for (std::uint64_t i = 0; i < g.cell_count(); i += 7) {
        CHECK(linear_index(g, box_from_linear(g, i)) == i);
    }
    CHECK_THROWS_AS(box_from_linear(g, g.cell_count()), domain_error);
    CHECK_THROWS_AS(linear_index(g, BoxId{{5, 0, 0}}), domain_error);
}

TEST_CASE("neighbouring boxes overlap and boxes two apart are disjoint")
{
    testing::Rng rng(21);
    for (int t = 0; t < 200; ++t) {
        const GridSpec g = random_grid(rng, 1);
        const auto p = g.counts()[0];
        CHECK(g.axis_lo(0, 0) == g.lower()[0]);
        for (std::uint64_t k = 0; k + 1 < p; ++k) {
            CHECK(g.axis_lo(0, k) < g.axis_lo(0, k + 1));
            CHECK(g.axis_hi(0, k) < g.axis_hi(0, k + 1));
            CHECK(g.axis_hi(0, k) > g.axis_lo(0, k + 1));
            if (k + 2 < p) {
                CHECK(g.axis_hi(0, k) <= g.axis_lo(0, k + 2));
            }
        }
        CHECK(exact(g.axis_hi(0, p - 1)) >= exact(g.lower()[0]) + exact(g.widths()[0]));
    }
}

TEST_CASE("axis ranges agree with a scan over all boxes")
{
    testing::Rng rng(22);
    for (int t = 0; t < 3000; ++t) {
        const GridSpec g = random_grid(rng, 1);
        const double a = g.lower()[0], w = g.widths()[0];
        double lo = rng.uniform(a - w / 4, a + w * 1.25);
        double hi = rng.coin(0.3) ? lo : rng.uniform(a - w / 4, a + w * 1.25);
        if (rng.coin(0.2)) {
            lo = g.axis_lo(0, rng.below(g.counts()[0]));  // exact box endpoint
        }
        if (hi < lo) {
            std::swap(lo, hi);
        }
        const IndexRange r = axis_range(g, 0, lo, hi);
        std::vector<std::uint64_t> expect;
        for (std::uint64_t k = 0; k < g.counts()[0]; ++k) {
            const bool meets = lo == hi ? (g.axis_lo(0, k) < lo && lo < g.axis_hi(0, k))
                                        : (g.axis_lo(0, k) < hi && lo < g.axis_hi(0, k));
            if (meets) {
                expect.push_back(k);
            }
        }
        if (expect.empty()) {
            CHECK(r.empty());
        } else {
            CHECK(r.first == expect.front());
            CHECK(r.last == expect.back());
            CHECK(r.size() == expect.size());
        }
    }
}

TEST_CASE("every point of the region lies in one or two boxes per axis")
{
    testing::Rng rng(23);
    for (int t = 0; t < 300; ++t) {
        const std::size_t dim = 1 + rng.below(3);
        const GridSpec g = random_grid(rng, dim);
        for (int s = 0; s < 20; ++s) {
            std::vector<double> x;
            for (std::size_t i = 0; i < dim; ++i) {
                double v = rng.uniform(g.lower()[i], g.lower()[i] + g.widths()[i]);
                if (rng.coin(0.2)) {
                    v = g.axis_lo(i, rng.below(g.counts()[i]));
                }
                if (!(v > g.lower()[i])) {
                    v = std::nextafter(g.lower()[i], INFINITY);
                }
                x.push_back(v);
            }
            const auto boxes = boxes_containing_point(g, x);
            REQUIRE(!boxes.empty());
            CHECK(boxes.size() <= (std::size_t{1} << dim));
            CHECK(std::is_sorted(boxes.begin(), boxes.end()));
            for (const auto& b : boxes) {
                const ORect r = box_bounds(g, b);
                for (std::size_t i = 0; i < dim; ++i) {
                    CHECK(r[i].contains(x[i]));
                }
            }
        }
    }
    const GridSpec g = grid_new({0.0}, {1.0}, 4);
    const double outside[] = {0.0};
    CHECK_THROWS_AS(boxes_containing_point(g, outside), domain_error);
}

TEST_CASE("rectangle hits match a scan and report containment in the region")
{
    testing::Rng rng(24);
    for (int t = 0; t < 300; ++t) {
        const GridSpec g = random_grid(rng, 2);
        if (g.cell_count() > 2000) {
            continue;
        }
        std::vector<OInterval> axes;
        for (std::size_t i = 0; i < 2; ++i) {
            const double a = g.lower()[i], w = g.widths()[i];
            const double lo = rng.uniform(a - w / 8, a + w);
            axes.emplace_back(lo, lo + rng.uniform(1e-6, w / 2));
        }
        const ORect r(axes);
        const RectHits hits = boxes_intersecting_rect(g, r);
        std::vector<BoxId> expect;
        for (std::uint64_t i = 0; i < g.cell_count(); ++i) {
            const BoxId id = box_from_linear(g, i);
            if (rect_intersects(box_bounds(g, id), r)) {
                expect.push_back(id);
            }
        }
        CHECK(hits.boxes == expect);
        const bool inside = r[0].lo() >= g.lower()[0] && r[0].hi() <= g.region_hi(0) &&
                            r[1].lo() >= g.lower()[1] && r[1].hi() <= g.region_hi(1);
        CHECK(hits.inside == inside);
    }
}

TEST_CASE("resolution bounds")
{
    testing::Rng rng(25);
    for (int t = 0; t < 200; ++t) {
        const std::size_t dim = 1 + rng.below(2);
        const GridSpec g = random_grid(rng, dim);
        for (Metric m : {Metric::euclidean, Metric::max}) {
            const double outer = outer_resolution_cover(g, m);
            for (int s = 0; s < 10; ++s) {
                const BoxId id = box_from_linear(g, rng.below(g.cell_count()));
                CHECK(rect_diam(box_bounds(g, id), m) <= outer);
            }
        }
        CHECK(inner_resolution_bound(g) <= g.kappa() / 2);
        CHECK(inner_resolution_bound(g) > 0);
        CHECK(thickness_bound(g) > 0);
        for (std::size_t i = 0; i < dim; ++i) {
            CHECK(thickness_bound(g) * 2 <= g.axis_hi(i, 0) - g.axis_lo(i, 0));
        }
    }
}
