#include "finres/interval.hpp"

#include "finres/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace finres {

namespace rounding {

namespace {

// Below this magnitude the fma/TwoSum error terms of mul, div and sqrt may
// themselves be rounded, so the sign test is not trustworthy.
constexpr double tiny = 0x1p-969;

double checked(double x)
{
    if (!std::isfinite(x)) {
        throw arithmetic_overflow("interval endpoint overflow");
    }
    return x;
}

// Exact rounding error of a + b (Knuth TwoSum); s must be fl(a + b).
double two_sum_err(double a, double b, double s)
{
    const double bb = s - a;
    return (a - (s - bb)) + (b - bb);
}

} // namespace

double next_up(double x)
{
    return checked(std::nextafter(x, std::numeric_limits<double>::infinity()));
}

double next_down(double x)
{
    return checked(std::nextafter(x, -std::numeric_limits<double>::infinity()));
}

double add_down(double a, double b)
{
    const double s = checked(a + b);
    return two_sum_err(a, b, s) < 0 ? next_down(s) : s;
}

double add_up(double a, double b)
{
    const double s = checked(a + b);
    return two_sum_err(a, b, s) > 0 ? next_up(s) : s;
}

double sub_down(double a, double b) { return add_down(a, -b); }
double sub_up(double a, double b) { return add_up(a, -b); }

double mul_down(double a, double b)
{
    const double p = checked(a * b);
    if (a == 0 || b == 0) {
        return 0.0;
    }
    if (std::fabs(p) < tiny) {
        return next_down(p);
    }
    return std::fma(a, b, -p) < 0 ? next_down(p) : p;
}

double mul_up(double a, double b)
{
    const double p = checked(a * b);
    if (a == 0 || b == 0) {
        return 0.0;
    }
    if (std::fabs(p) < tiny) {
        return next_up(p);
    }
    return std::fma(a, b, -p) > 0 ? next_up(p) : p;
}

namespace {

// Sign of (a/b - fl(a/b)): -1, 0, +1, or 2 when it cannot be decided.
int div_err_sign(double a, double b, double q)
{
    if (a == 0) {
        return 0;
    }
    if (std::fabs(q) < tiny || std::fabs(a) < tiny) {
        return 2;
    }
    const double r = std::fma(-q, b, a);
    if (r == 0) {
        return 0;
    }
    return ((r > 0) == (b > 0)) ? 1 : -1;
}

} // namespace

double div_down(double a, double b)
{
    if (b == 0) {
        throw domain_error("division by zero");
    }
    const double q = checked(a / b);
    const int s = div_err_sign(a, b, q);
    return (s == -1 || s == 2) ? next_down(q) : q;
}

double div_up(double a, double b)
{
    if (b == 0) {
        throw domain_error("division by zero");
    }
    const double q = checked(a / b);
    const int s = div_err_sign(a, b, q);
    return (s == 1 || s == 2) ? next_up(q) : q;
}

double sqrt_up(double x)
{
    if (x < 0) {
        throw domain_error("sqrt of negative number");
    }
    const double s = std::sqrt(x);
    if (x == 0) {
        return 0.0;
    }
    if (x < tiny) {
        return next_up(s);
    }
    return std::fma(s, s, -x) < 0 ? next_up(s) : s;
}

double sqrt_down(double x)
{
    if (x < 0) {
        throw domain_error("sqrt of negative number");
    }
    const double s = std::sqrt(x);
    if (x == 0) {
        return 0.0;
    }
    if (x < tiny) {
        return std::max(0.0, next_down(s));
    }
    return std::fma(s, s, -x) > 0 ? next_down(s) : s;
}

} // namespace rounding

using namespace rounding;

OInterval::OInterval(double lo, double hi) : lo_(lo), hi_(hi)
{
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw domain_error("interval endpoints must be finite");
    }
    if (!(lo < hi)) {
        throw domain_error("empty open interval");
    }
}

OInterval OInterval::around(double x)
{
    return OInterval(next_down(x), next_up(x));
}

double OInterval::width_up() const { return sub_up(hi_, lo_); }

OInterval operator+(const OInterval& a, const OInterval& b)
{
    return OInterval(add_down(a.lo(), b.lo()), add_up(a.hi(), b.hi()));
}

OInterval operator-(const OInterval& a, const OInterval& b)
{
    return OInterval(sub_down(a.lo(), b.hi()), sub_up(a.hi(), b.lo()));
}

OInterval operator-(const OInterval& a) { return OInterval(-a.hi(), -a.lo()); }

OInterval operator*(const OInterval& a, const OInterval& b)
{
    const double lo = std::min({mul_down(a.lo(), b.lo()), mul_down(a.lo(), b.hi()),
                                mul_down(a.hi(), b.lo()), mul_down(a.hi(), b.hi())});
    const double hi = std::max({mul_up(a.lo(), b.lo()), mul_up(a.lo(), b.hi()),
                                mul_up(a.hi(), b.lo()), mul_up(a.hi(), b.hi())});
    return OInterval(lo, hi);
}

OInterval operator/(const OInterval& a, const OInterval& b)
{
    if (b.lo() <= 0 && 0 <= b.hi()) {
        throw domain_error("division by an interval whose closure contains 0");
    }
    const double lo = std::min({div_down(a.lo(), b.lo()), div_down(a.lo(), b.hi()),
                                div_down(a.hi(), b.lo()), div_down(a.hi(), b.hi())});
    const double hi = std::max({div_up(a.lo(), b.lo()), div_up(a.lo(), b.hi()),
                                div_up(a.hi(), b.lo()), div_up(a.hi(), b.hi())});
    return OInterval(lo, hi);
}

OInterval operator+(const OInterval& a, double c)
{
    return OInterval(add_down(a.lo(), c), add_up(a.hi(), c));
}

OInterval operator+(double c, const OInterval& a) { return a + c; }

OInterval operator-(const OInterval& a, double c)
{
    return OInterval(sub_down(a.lo(), c), sub_up(a.hi(), c));
}

OInterval operator-(double c, const OInterval& a)
{
    return OInterval(sub_down(c, a.hi()), sub_up(c, a.lo()));
}

OInterval operator*(double c, const OInterval& a)
{
    if (c == 0) {
        throw domain_error("scaling by zero collapses the interval");
    }
    if (c > 0) {
        return OInterval(mul_down(c, a.lo()), mul_up(c, a.hi()));
    }
    return OInterval(mul_down(c, a.hi()), mul_up(c, a.lo()));
}

OInterval sqr(const OInterval& a)
{
    if (a.lo() > 0) {
        return OInterval(mul_down(a.lo(), a.lo()), mul_up(a.hi(), a.hi()));
    }
    if (a.hi() < 0) {
        return OInterval(mul_down(a.hi(), a.hi()), mul_up(a.lo(), a.lo()));
    }
    const double m = std::max(std::fabs(a.lo()), std::fabs(a.hi()));
    return OInterval(-std::numeric_limits<double>::denorm_min(), mul_up(m, m));
}

OInterval from_rational(std::int64_t num, std::int64_t den)
{
    constexpr std::int64_t exact_limit = std::int64_t{1} << 53;
    if (den == 0) {
        throw domain_error("rational with zero denominator");
    }
    if (num > exact_limit || num < -exact_limit || den > exact_limit || den < -exact_limit) {
        throw domain_error("rational numerator/denominator not exactly representable");
    }
    const double n = static_cast<double>(num);
    const double d = static_cast<double>(den);
    const double q = n / d;
    if (num == 0) {
        return OInterval::around(0.0);
    }
    const double r = std::fma(-q, d, n);
    if (r == 0) {
        return OInterval::around(q);
    }
    if ((r > 0) == (d > 0)) {
        return OInterval(q, next_up(q));
    }
    return OInterval(next_down(q), q);
}

OInterval hull(const OInterval& a, const OInterval& b)
{
    return OInterval(std::min(a.lo(), b.lo()), std::max(a.hi(), b.hi()));
}

ORect::ORect(std::vector<OInterval> axes) : axes_(std::move(axes))
{
    if (axes_.empty()) {
        throw domain_error("rectangle needs at least one axis");
    }
}

ORect::ORect(std::initializer_list<OInterval> axes) : ORect(std::vector<OInterval>(axes)) {}

namespace {

void require_same_dim(const ORect& a, const ORect& b)
{
    if (a.dim() != b.dim()) {
        throw domain_error("rectangle dimension mismatch");
    }
}

} // namespace

double rect_diam(const ORect& r, Metric metric)
{
    double acc = 0.0;
    for (const auto& axis : r.axes()) {
        const double w = axis.width_up();
        if (metric == Metric::max) {
            acc = std::max(acc, w);
        } else {
            acc = add_up(acc, mul_up(w, w));
        }
    }
    return metric == Metric::max ? acc : sqrt_up(acc);
}

bool rect_intersects(const ORect& a, const ORect& b)
{
    require_same_dim(a, b);
    for (std::size_t i = 0; i < a.dim(); ++i) {
        if (!a[i].intersects(b[i])) {
            return false;
        }
    }
    return true;
}

bool rect_contains(const ORect& a, const ORect& b)
{
    require_same_dim(a, b);
    for (std::size_t i = 0; i < a.dim(); ++i) {
        if (!a[i].contains(b[i])) {
            return false;
        }
    }
    return true;
}

ORect rect_hull(const ORect& a, const ORect& b)
{
    require_same_dim(a, b);
    std::vector<OInterval> axes;
    axes.reserve(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        axes.push_back(hull(a[i], b[i]));
    }
    return ORect(std::move(axes));
}

} // namespace finres
