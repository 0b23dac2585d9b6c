#include "finres/cover.hpp"

#include "finres/error.hpp"

#include <algorithm>

namespace finres {

bool OpenSet1D::contains(const mpq_class& x) const
{
    return std::any_of(parts.begin(), parts.end(),
                       [&](const auto& p) { return p.first < x && x < p.second; });
}

bool OpenSet1D::closure_contains(const mpq_class& x) const
{
    return std::any_of(parts.begin(), parts.end(),
                       [&](const auto& p) { return p.first <= x && x <= p.second; });
}

mpq_class OpenSet1D::diameter() const
{
    if (parts.empty()) {
        return 0;
    }
    return parts.back().second - parts.front().first;
}

void OpenSet1D::subtract_closed(const mpq_class& lo, const mpq_class& hi)
{
    std::vector<std::pair<mpq_class, mpq_class>> out;
    for (auto& [a, b] : parts) {
        const mpq_class left_hi = b < lo ? b : lo;
        if (a < left_hi) {
            out.emplace_back(a, left_hi);
        }
        const mpq_class right_lo = a > hi ? a : hi;
        if (right_lo < b) {
            out.emplace_back(right_lo, b);
        }
    }
    parts = std::move(out);
}

UnionCover1D to_union_cover(const IntervalCover1D& c)
{
    UnionCover1D out;
    out.reserve(c.size());
    for (const auto& iv : c) {
        OpenSet1D s;
        s.parts.emplace_back(mpq_class(iv.lo()), mpq_class(iv.hi()));
        out.push_back(std::move(s));
    }
    return out;
}

namespace {

// Membership in a union of open sets and in their closures is constant on
// every open gap between consecutive endpoints, so checking endpoints and
// gap midpoints decides every set-level question exactly.
std::vector<mpq_class> critical_points(const UnionCover1D& c)
{
    std::vector<mpq_class> pts;
    for (const auto& e : c) {
        for (const auto& [a, b] : e.parts) {
            pts.push_back(a);
            pts.push_back(b);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

template <class Pred>
bool any_other(const UnionCover1D& c, std::size_t self, std::size_t limit, Pred pred)
{
    for (std::size_t j = 0; j < limit; ++j) {
        if (j != self && pred(c[j])) {
            return true;
        }
    }
    return false;
}

// Interior of c[self] minus the closure of c[j] for j < limit, j != self,
// as maximal open intervals.
std::vector<std::pair<mpq_class, mpq_class>>
exclusive_components(const UnionCover1D& c, std::size_t self, std::size_t limit,
                     const std::vector<mpq_class>& pts)
{
    auto exclusive = [&](const mpq_class& x) {
        return c[self].contains(x) &&
               !any_other(c, self, limit, [&](const OpenSet1D& s) { return s.closure_contains(x); });
    };

    std::vector<std::pair<mpq_class, mpq_class>> comps;
    bool open_run = false;
    mpq_class run_lo;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const mpq_class mid = (pts[i] + pts[i + 1]) / 2;
        const bool gap = exclusive(mid);
        if (gap && !open_run) {
            run_lo = pts[i];
            open_run = true;
        }
        if (open_run) {
            const bool continues = gap && i + 2 < pts.size() && exclusive(pts[i + 1]) &&
                                   exclusive((pts[i + 1] + pts[i + 2]) / 2);
            if (!gap) {
                open_run = false;
            } else if (!continues) {
                comps.emplace_back(run_lo, pts[i + 1]);
                open_run = false;
            }
        }
    }
    return comps;
}

bool contained_in_others(const UnionCover1D& c, std::size_t self, const std::vector<mpq_class>& pts)
{
    auto uncovered = [&](const mpq_class& x) {
        return c[self].contains(x) &&
               !any_other(c, self, c.size(), [&](const OpenSet1D& s) { return s.contains(x); });
    };
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (uncovered(pts[i])) {
            return false;
        }
        if (i + 1 < pts.size() && uncovered((pts[i] + pts[i + 1]) / 2)) {
            return false;
        }
    }
    return true;
}

void require_interval_cover(const IntervalCover1D& c)
{
    if (c.empty()) {
        throw domain_error("empty cover");
    }
    std::vector<OInterval> sorted = c;
    std::sort(sorted.begin(), sorted.end(),
              [](const OInterval& x, const OInterval& y) { return x.lo() < y.lo(); });
    double reach = sorted.front().hi();
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        if (sorted[i].lo() >= reach) {
            throw domain_error("not a cover of an interval: gap at " + std::to_string(reach));
        }
        reach = std::max(reach, sorted[i].hi());
    }
}

} // namespace

bool is_essential_1d(const UnionCover1D& c)
{
    const auto pts = critical_points(c);
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (exclusive_components(c, i, c.size(), pts).empty()) {
            return false;
        }
    }
    return true;
}

bool is_essential_1d(const IntervalCover1D& c) { return is_essential_1d(to_union_cover(c)); }

UnionCover1D essentialize_1d(const IntervalCover1D& input)
{
    require_interval_cover(input);
    UnionCover1D c = to_union_cover(input);

    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k].empty()) {
            continue;
        }
        const auto pts = critical_points(c);
        if (!exclusive_components(c, k, c.size(), pts).empty()) {
            continue;
        }
        if (contained_in_others(c, k, pts)) {
            c[k].parts.clear();
            continue;
        }
        // Witness ball: the largest piece of c[k] clear of the earlier
        // elements, which are final from here on.
        const auto comps = exclusive_components(c, k, k, pts);
        if (comps.empty()) {
            throw domain_error("element " + std::to_string(k) +
                               " is only uncovered on boundaries of earlier elements");
        }
        const auto* best = &comps.front();
        for (const auto& comp : comps) {
            if (comp.second - comp.first > best->second - best->first) {
                best = &comp;
            }
        }
        const mpq_class centre = (best->first + best->second) / 2;
        const mpq_class radius = (best->second - best->first) / 2;
        for (std::size_t j = k + 1; j < c.size(); ++j) {
            c[j].subtract_closed(centre - radius / 2, centre + radius / 2);
        }
    }

    UnionCover1D out;
    for (auto& e : c) {
        if (!e.empty()) {
            out.push_back(std::move(e));
        }
    }
    return out;
}

mpq_class outer_resolution_1d(const UnionCover1D& c)
{
    mpq_class best = 0;
    for (const auto& e : c) {
        best = std::max(best, e.diameter());
    }
    return best;
}

} // namespace finres
