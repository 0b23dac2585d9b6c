#ifndef FINRES_DYNMAP_HPP
#define FINRES_DYNMAP_HPP

#include "finres/interval.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace finres {

enum class MapKind { henon, logistic, linear1d };

std::string_view to_string(MapKind kind);
MapKind parse_map_kind(std::string_view name);

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    friend bool operator==(const Rational&, const Rational&) = default;
};

// A map together with rigorous enclosures of its parameters. The exact
// rational parameter values are kept alongside for the exact-arithmetic
// oracles (minimal representations).
//
//   henon     (x, y) -> (1 + y - a x^2, b x)                params (a, b)
//   logistic  x -> r c(x) (1 - c(x)), c = clamp to [0, 1]    params (r), r > 0
//   linear1d  x -> s x + c                                   params (s, c)
//
// The logistic map is extended to the real line through the clamp so that
// a cover slightly larger than [0, 1] can carry it; on [0, 1] it is the
// usual logistic family.
class MapSpec {
public:
    static MapSpec henon(Rational a, Rational b);
    static MapSpec logistic(Rational r);
    static MapSpec linear1d(Rational slope, Rational offset);

    MapKind kind() const noexcept { return kind_; }
    std::size_t dim() const noexcept { return kind_ == MapKind::henon ? 2 : 1; }
    const std::vector<OInterval>& params() const noexcept { return params_; }
    const std::vector<Rational>& exact_params() const noexcept { return exact_; }

private:
    MapSpec(MapKind kind, std::vector<Rational> exact);

    MapKind kind_;
    std::vector<Rational> exact_;
    std::vector<OInterval> params_;
};

// Open rectangle containing f(u) for every parameter inside the enclosures.
ORect eval_box(const MapSpec& m, const ORect& u);

// Image enclosure of a single point, evaluated on (x - ulp, x + ulp).
ORect eval_point(const MapSpec& m, std::span<const double> x);

} // namespace finres

#endif
