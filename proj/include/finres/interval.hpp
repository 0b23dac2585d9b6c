#ifndef FINRES_INTERVAL_HPP
#define FINRES_INTERVAL_HPP

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace finres {

// Directed rounding of single binary64 operations without touching the FPU
// rounding mode. Each result is computed in round-to-nearest, the rounding
// error is recovered with an error-free transformation (TwoSum / fma) and
// the result is moved one ulp outward only when it landed on the wrong side
// of the exact value. Where the error term itself may be inexact (results
// near the subnormal range) the result is moved unconditionally.
//
// All functions throw arithmetic_overflow when the result is not finite.
namespace rounding {

double next_up(double x);
double next_down(double x);

double add_down(double a, double b);
double add_up(double a, double b);
double sub_down(double a, double b);
double sub_up(double a, double b);
double mul_down(double a, double b);
double mul_up(double a, double b);
double div_down(double a, double b);
double div_up(double a, double b);
double sqrt_up(double x);
double sqrt_down(double x);

} // namespace rounding

// Open interval (lo, hi) with binary64 endpoints. Always nonempty and finite.
class OInterval {
public:
    OInterval(double lo, double hi);

    // Smallest open interval around a representable point: (x-ulp, x+ulp).
    static OInterval around(double x);

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    double width_up() const;

    bool contains(double x) const noexcept { return lo_ < x && x < hi_; }
    // Closed-endpoint comparison: (lo, hi) is a superset of (b.lo, b.hi).
    bool contains(const OInterval& b) const noexcept { return lo_ <= b.lo_ && b.hi_ <= hi_; }
    bool intersects(const OInterval& b) const noexcept { return lo_ < b.hi_ && b.lo_ < hi_; }

    friend bool operator==(const OInterval&, const OInterval&) = default;

private:
    double lo_;
    double hi_;
};

OInterval operator+(const OInterval& a, const OInterval& b);
OInterval operator-(const OInterval& a, const OInterval& b);
OInterval operator*(const OInterval& a, const OInterval& b);
OInterval operator/(const OInterval& a, const OInterval& b);
OInterval operator-(const OInterval& a);

OInterval operator+(const OInterval& a, double c);
OInterval operator+(double c, const OInterval& a);
OInterval operator-(const OInterval& a, double c);
OInterval operator-(double c, const OInterval& a);
OInterval operator*(double c, const OInterval& a);

// Even power with the open-interval convention: when the closure of `a`
// contains 0 the lower endpoint is the largest negative binary64 number,
// so that (-1,1)^2 = (-eps, 1).
OInterval sqr(const OInterval& a);

// Open interval of width at most 4 ulp containing num/den. Both integers
// must be exactly representable (|x| <= 2^53).
OInterval from_rational(std::int64_t num, std::int64_t den);

OInterval hull(const OInterval& a, const OInterval& b);

enum class Metric { euclidean, max };

// Product of open intervals.
class ORect {
public:
    explicit ORect(std::vector<OInterval> axes);
    ORect(std::initializer_list<OInterval> axes);

    std::size_t dim() const noexcept { return axes_.size(); }
    const OInterval& operator[](std::size_t i) const { return axes_[i]; }
    const std::vector<OInterval>& axes() const noexcept { return axes_; }

    friend bool operator==(const ORect&, const ORect&) = default;

private:
    std::vector<OInterval> axes_;
};

// Upper bound on the diameter of the closure of r.
double rect_diam(const ORect& r, Metric metric);
bool rect_intersects(const ORect& a, const ORect& b);
bool rect_contains(const ORect& a, const ORect& b);
ORect rect_hull(const ORect& a, const ORect& b);

} // namespace finres

#endif
