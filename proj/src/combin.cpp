#include "finres/combin.hpp"

#include "finres/error.hpp"

#include <gmpxx.h>

namespace finres {

CombMap::CombMap(std::vector<std::vector<Index>> images) : images_(std::move(images))
{
    for (auto& img : images_) {
        std::sort(img.begin(), img.end());
        img.erase(std::unique(img.begin(), img.end()), img.end());
        if (!img.empty() && img.back() >= images_.size()) {
            throw domain_error("image index out of range");
        }
    }
}

CombMap CombMap::identity(std::size_t n)
{
    std::vector<std::vector<Index>> images(n);
    for (std::size_t u = 0; u < n; ++u) {
        images[u].push_back(static_cast<Index>(u));
    }
    return CombMap(std::move(images));
}

bool CombMap::total() const
{
    return std::none_of(images_.begin(), images_.end(), [](const auto& img) { return img.empty(); });
}

std::size_t CombMap::edge_count() const
{
    std::size_t m = 0;
    for (const auto& img : images_) {
        m += img.size();
    }
    return m;
}

std::vector<CombMap::Index> image_set(const CombMap& f, std::span<const CombMap::Index> s)
{
    std::vector<char> hit(f.size(), 0);
    for (auto u : s) {
        if (u >= f.size()) {
            throw domain_error("element index out of range");
        }
        for (auto v : f.image(u)) {
            hit[v] = 1;
        }
    }
    std::vector<CombMap::Index> out;
    for (std::size_t v = 0; v < hit.size(); ++v) {
        if (hit[v]) {
            out.push_back(static_cast<CombMap::Index>(v));
        }
    }
    return out;
}

CombMap compose(const CombMap& g, const CombMap& f)
{
    if (g.size() != f.size()) {
        throw domain_error("composition of maps on different covers");
    }
    std::vector<std::vector<CombMap::Index>> images(f.size());
    for (std::size_t u = 0; u < f.size(); ++u) {
        images[u] = image_set(g, f.image(u));
    }
    return CombMap(std::move(images));
}

CombMap power(const CombMap& f, std::size_t k)
{
    if (k == 0) {
        throw domain_error("power needs k >= 1");
    }
    CombMap result = f;
    for (std::size_t i = 1; i < k; ++i) {
        result = compose(f, result);
    }
    return result;
}

CombMap inverse(const CombMap& f)
{
    std::vector<std::vector<CombMap::Index>> images(f.size());
    for (std::size_t u = 0; u < f.size(); ++u) {
        for (auto v : f.image(u)) {
            images[v].push_back(static_cast<CombMap::Index>(u));
        }
    }
    return CombMap(std::move(images));
}

bool mixing_by_powers(const CombMap& f)
{
    const std::size_t n = f.size();
    if (n == 0) {
        return false;
    }
    const std::size_t bound = (n - 1) * (n - 1) + 1;
    CombMap current = f;
    for (std::size_t k = 1; k <= bound; ++k) {
        if (k > 1) {
            current = compose(f, current);
        }
        bool full = true;
        for (std::size_t u = 0; u < n && full; ++u) {
            full = current.image(u).size() == n;
        }
        if (full) {
            return true;
        }
    }
    return false;
}

namespace {

mpq_class exact(const Rational& q)
{
    mpq_class r(mpz_class(static_cast<long>(q.num)), mpz_class(static_cast<long>(q.den)));
    r.canonicalize();
    return r;
}

// Connected subset of the line: endpoints with attainment flags.
struct ExactInterval {
    mpq_class lo;
    bool lo_closed;
    mpq_class hi;
    bool hi_closed;
};

bool meets_open(const ExactInterval& s, const mpq_class& wl, const mpq_class& wh)
{
    if (s.lo == s.hi) {
        return wl < s.lo && s.lo < wh;
    }
    const mpq_class& lo = s.lo > wl ? s.lo : wl;
    const mpq_class& hi = s.hi < wh ? s.hi : wh;
    return lo < hi;
}

ExactInterval linear_image(const mpq_class& s, const mpq_class& c, const mpq_class& l,
                           const mpq_class& h)
{
    if (s == 0) {
        return {c, true, c, true};
    }
    mpq_class a = s * l + c;
    mpq_class b = s * h + c;
    if (s < 0) {
        std::swap(a, b);
    }
    return {a, false, b, false};
}

// r c (1 - c) with c the clamp of (l, h) to [0, 1].
ExactInterval logistic_image(const mpq_class& r, const mpq_class& l, const mpq_class& h)
{
    ExactInterval dom;
    if (h <= 0) {
        dom = {0, true, 0, true};
    } else if (l >= 1) {
        dom = {1, true, 1, true};
    } else {
        dom = {l < 0 ? mpq_class(0) : l, l < 0, h > 1 ? mpq_class(1) : h, h > 1};
    }
    auto g = [&](const mpq_class& x) { return mpq_class(r * x * (1 - x)); };
    if (dom.lo == dom.hi) {
        const mpq_class v = g(dom.lo);
        return {v, true, v, true};
    }
    const mpq_class half(1, 2);
    const mpq_class gl = g(dom.lo);
    const mpq_class gh = g(dom.hi);
    ExactInterval out;
    // inf sits at an endpoint since r > 0 makes g unimodal
    if (gl < gh) {
        out.lo = gl;
        out.lo_closed = dom.lo_closed;
    } else if (gh < gl) {
        out.lo = gh;
        out.lo_closed = dom.hi_closed;
    } else {
        out.lo = gl;
        out.lo_closed = dom.lo_closed || dom.hi_closed;
    }
    const bool peak_inside = (dom.lo < half && half < dom.hi) ||
                             (dom.lo == half && dom.lo_closed) || (dom.hi == half && dom.hi_closed);
    if (peak_inside) {
        out.hi = g(half);
        out.hi_closed = true;
    } else if (gl > gh) {
        out.hi = gl;
        out.hi_closed = dom.lo_closed;
    } else if (gh > gl) {
        out.hi = gh;
        out.hi_closed = dom.hi_closed;
    } else {
        out.hi = gl;
        out.hi_closed = dom.lo_closed || dom.hi_closed;
    }
    return out;
}

} // namespace

CombMap minimal_representation(const MapSpec& m, const CoverHandle<OInterval>& u)
{
    if (m.kind() == MapKind::henon) {
        throw domain_error("minimal representation needs a one-dimensional map");
    }
    const auto& q = m.exact_params();
    std::vector<std::vector<CombMap::Index>> images(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        const mpq_class l(u.elements[i].lo());
        const mpq_class h(u.elements[i].hi());
        const ExactInterval img = m.kind() == MapKind::linear1d
                                      ? linear_image(exact(q[0]), exact(q[1]), l, h)
                                      : logistic_image(exact(q[0]), l, h);
        for (std::size_t w = 0; w < u.size(); ++w) {
            if (meets_open(img, mpq_class(u.elements[w].lo()), mpq_class(u.elements[w].hi()))) {
                images[i].push_back(static_cast<CombMap::Index>(w));
            }
        }
    }
    return CombMap(std::move(images));
}

} // namespace finres
