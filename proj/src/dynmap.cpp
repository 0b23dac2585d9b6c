#include "finres/dynmap.hpp"

#include "finres/error.hpp"

#include <algorithm>
#include <limits>

namespace finres {

std::string_view to_string(MapKind kind)
{
    switch (kind) {
    case MapKind::henon:
        return "henon";
    case MapKind::logistic:
        return "logistic";
    case MapKind::linear1d:
        return "linear1d";
    }
    return "?";
}

MapKind parse_map_kind(std::string_view name)
{
    if (name == "henon") {
        return MapKind::henon;
    }
    if (name == "logistic") {
        return MapKind::logistic;
    }
    if (name == "linear1d") {
        return MapKind::linear1d;
    }
    throw domain_error("unknown map kind '" + std::string(name) + "'");
}

MapSpec::MapSpec(MapKind kind, std::vector<Rational> exact) : kind_(kind), exact_(std::move(exact))
{
    for (const auto& q : exact_) {
        params_.push_back(from_rational(q.num, q.den));
    }
}

MapSpec MapSpec::henon(Rational a, Rational b) { return MapSpec(MapKind::henon, {a, b}); }

MapSpec MapSpec::logistic(Rational r)
{
    if ((r.num > 0) != (r.den > 0) || r.num == 0) {
        throw domain_error("logistic parameter must be positive");
    }
    return MapSpec(MapKind::logistic, {r});
}

MapSpec MapSpec::linear1d(Rational slope, Rational offset)
{
    return MapSpec(MapKind::linear1d, {slope, offset});
}

namespace {

// x clamped to [0, 1], as an open interval enclosing the closed image set.
OInterval clamp_unit(const OInterval& x)
{
    constexpr double below_zero = -std::numeric_limits<double>::denorm_min();
    const double above_one = rounding::next_up(1.0);
    if (x.hi() <= 0) {
        return OInterval(below_zero, std::numeric_limits<double>::denorm_min());
    }
    if (x.lo() >= 1) {
        return OInterval(rounding::next_down(1.0), above_one);
    }
    const double lo = x.lo() < 0 ? below_zero : x.lo();
    const double hi = x.hi() > 1 ? above_one : x.hi();
    return OInterval(lo, hi);
}

} // namespace

ORect eval_box(const MapSpec& m, const ORect& u)
{
    if (u.dim() != m.dim()) {
        throw domain_error("box dimension does not match the map");
    }
    const auto& p = m.params();
    switch (m.kind()) {
    case MapKind::henon: {
        const OInterval& x = u[0];
        const OInterval& y = u[1];
        const OInterval ax2 = p[0] * sqr(x);
        return ORect{(1.0 + y) - ax2, p[1] * x};
    }
    case MapKind::logistic: {
        // r (1/4 - (c - 1/2)^2) keeps the single occurrence of the variable
        const OInterval c = clamp_unit(u[0]);
        return ORect{p[0] * (0.25 - sqr(c - 0.5))};
    }
    case MapKind::linear1d:
        return ORect{p[0] * u[0] + p[1]};
    }
    throw domain_error("unknown map kind");
}

ORect eval_point(const MapSpec& m, std::span<const double> x)
{
    std::vector<OInterval> axes;
    for (double xi : x) {
        axes.push_back(OInterval::around(xi));
    }
    return eval_box(m, ORect(std::move(axes)));
}

} // namespace finres
