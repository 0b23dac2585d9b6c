#include "finres/dynmap.hpp"
#include "finres/error.hpp"
#include "oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace finres;
using finres::testing::encloses;
using finres::testing::exact;

namespace {

mpq_class q(Rational r) { return mpq_class(r.num, r.den); }

std::vector<mpq_class> exact_image(const MapSpec& m, const std::vector<mpq_class>& params,
                                   const std::vector<mpq_class>& x)
{
    switch (m.kind()) {
    case MapKind::henon:
        return {1 + x[1] - params[0] * x[0] * x[0], params[1] * x[0]};
    case MapKind::logistic: {
        mpq_class c = x[0];
        if (c < 0) {
            c = 0;
        } else if (c > 1) {
            c = 1;
        }
        return {params[0] * c * (1 - c)};
    }
    case MapKind::linear1d:
        return {params[0] * x[0] + params[1]};
    }
    return {};
}

// Parameter values drawn from inside the enclosures, the exact one included.
std::vector<mpq_class> sample_params(testing::Rng& rng, const MapSpec& m)
{
    std::vector<mpq_class> out;
    for (std::size_t i = 0; i < m.params().size(); ++i) {
        out.push_back(rng.coin() ? q(m.exact_params()[i]) : rng.point_in(m.params()[i]));
    }
    return out;
}

ORect random_box(testing::Rng& rng, const MapSpec& m)
{
    std::vector<OInterval> axes;
    for (std::size_t i = 0; i < m.dim(); ++i) {
        const double lo = m.kind() == MapKind::henon ? rng.uniform(-1.5, 1.5) : rng.uniform(-0.1, 1.1);
        const double w = std::ldexp(rng.uniform(0.5, 1), -static_cast<int>(rng.below(40)));
        axes.emplace_back(lo, lo + w);
    }
    return ORect(axes);
}

void check_soundness(const MapSpec& m, int boxes, std::uint64_t seed)
{
    testing::Rng rng(seed);
    int violations = 0;
    for (int b = 0; b < boxes; ++b) {
        const ORect u = random_box(rng, m);
        const ORect img = eval_box(m, u);
        for (int s = 0; s < 10; ++s) {
            std::vector<mpq_class> x;
            for (std::size_t i = 0; i < m.dim(); ++i) {
                x.push_back(rng.point_in(u[i]));
            }
            const auto fx = exact_image(m, sample_params(rng, m), x);
            for (std::size_t i = 0; i < fx.size(); ++i) {
                violations += encloses(img[i], fx[i]) ? 0 : 1;
            }
        }
    }
    CHECK(violations == 0);
}

} // namespace

TEST_CASE("map names")
{
    for (MapKind k : {MapKind::henon, MapKind::logistic, MapKind::linear1d}) {
        CHECK(parse_map_kind(to_string(k)) == k);
    }
    CHECK_THROWS_AS(parse_map_kind("tent"), domain_error);
}

TEST_CASE("parameter enclosures contain the exact rationals")
{
    const MapSpec h = MapSpec::henon({14, 10}, {3, 10});
    CHECK(h.dim() == 2);
    CHECK(encloses(h.params()[0], mpq_class(7, 5)));
    CHECK(encloses(h.params()[1], mpq_class(3, 10)));
    CHECK(h.exact_params()[0] == Rational{14, 10});
    CHECK_THROWS_AS(MapSpec::logistic({0, 1}), domain_error);
    CHECK_THROWS_AS(MapSpec::logistic({-4, 1}), domain_error);
    CHECK_THROWS_AS(MapSpec::henon({1, 0}, {1, 1}), domain_error);
}

TEST_CASE("image of the Henon seed point")
{
    const MapSpec h = MapSpec::henon({14, 10}, {3, 10});
    const double x0[] = {0.61989426930989, 0.17586130934794};
    const ORect img = eval_point(h, x0);
    const auto fx = exact_image(h, {mpq_class(7, 5), mpq_class(3, 10)}, {exact(x0[0]), exact(x0[1])});
    CHECK(encloses(img[0], fx[0]));
    CHECK(encloses(img[1], fx[1]));
    // frozen from the exact evaluation above
    CHECK(fx[0].get_d() == doctest::Approx(0.6378848421754006).epsilon(1e-15));
    CHECK(fx[1].get_d() == doctest::Approx(0.185968280792967).epsilon(1e-15));
    CHECK(img[0].hi() - img[0].lo() < 1e-14);
    CHECK(img[1].hi() - img[1].lo() < 1e-14);
}

TEST_CASE("Henon images are sound")
{
    check_soundness(MapSpec::henon({14, 10}, {3, 10}), 100000, 41);
}

TEST_CASE("logistic and linear images are sound")
{
    check_soundness(MapSpec::logistic({4, 1}), 30000, 42);
    check_soundness(MapSpec::logistic({37, 10}), 10000, 43);
    check_soundness(MapSpec::linear1d({-3, 2}, {1, 7}), 20000, 44);
    check_soundness(MapSpec::linear1d({0, 1}, {1, 3}), 5000, 45);
}

TEST_CASE("inclusion monotonicity up to one ulp")
{
    testing::Rng rng(46);
    const MapSpec maps[] = {MapSpec::henon({14, 10}, {3, 10}), MapSpec::logistic({4, 1}),
                            MapSpec::linear1d({5, 3}, {-1, 2})};
    for (const MapSpec& m : maps) {
        for (int t = 0; t < 5000; ++t) {
            const ORect v = random_box(rng, m);
            std::vector<OInterval> inner;
            for (std::size_t i = 0; i < m.dim(); ++i) {
                const double w = v[i].hi() - v[i].lo();
                const double lo = v[i].lo() + w * rng.uniform(0, 0.4);
                const double hi = v[i].hi() - w * rng.uniform(0, 0.4);
                inner.emplace_back(lo, hi > lo ? hi : std::nextafter(lo, INFINITY));
            }
            const ORect a = eval_box(m, ORect(inner));
            const ORect b = eval_box(m, v);
            for (std::size_t i = 0; i < m.dim(); ++i) {
                CHECK(b[i].lo() <= std::nextafter(a[i].lo(), INFINITY));
                CHECK(std::nextafter(a[i].hi(), -INFINITY) <= b[i].hi());
            }
        }
    }
}

TEST_CASE("logistic clamp outside the unit interval")
{
    const MapSpec m = MapSpec::logistic({4, 1});
    const ORect left = eval_box(m, ORect{OInterval(-0.5, -0.25)});
    CHECK(left[0].contains(0.0));
    CHECK(left[0].hi() < 1e-14);
    const ORect mid = eval_box(m, ORect{OInterval(0.25, 0.75)});
    CHECK(encloses(mid[0], 1));
    CHECK(encloses(mid[0], mpq_class(3, 4)));
    CHECK(mid[0].hi() < std::nextafter(1.0, 2.0) * (1 + 1e-15));
}

TEST_CASE("dimension mismatch")
{
    CHECK_THROWS_AS(eval_box(MapSpec::henon({14, 10}, {3, 10}), ORect{OInterval(0, 1)}),
                    domain_error);
}
