#ifndef FINRES_COMBIN_HPP
#define FINRES_COMBIN_HPP

#include "finres/dynmap.hpp"
#include "finres/interval.hpp"

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

namespace finres {

// Multivalued self-map of the elements {0, ..., n-1} of a finite cover.
class CombMap {
public:
    using Index = std::uint32_t;

    CombMap() = default;
    // Image lists are sorted and deduplicated; throws domain_error on an
    // out-of-range index.
    explicit CombMap(std::vector<std::vector<Index>> images);

    static CombMap identity(std::size_t n);

    std::size_t size() const noexcept { return images_.size(); }
    std::span<const Index> image(std::size_t u) const { return images_.at(u); }
    // Every element has a nonempty image.
    bool total() const;
    std::size_t edge_count() const;

    friend bool operator==(const CombMap&, const CombMap&) = default;

private:
    std::vector<std::vector<Index>> images_;
};

// Union of the images of the elements of s.
std::vector<CombMap::Index> image_set(const CombMap& f, std::span<const CombMap::Index> s);

// (g o f)(u) = union of g(v) over v in f(u).
CombMap compose(const CombMap& g, const CombMap& f);
// k-fold composition, k >= 1.
CombMap power(const CombMap& f, std::size_t k);
CombMap inverse(const CombMap& f);

// Brute force: some power F^k, k <= (n-1)^2 + 1, maps every element onto
// the whole cover.
bool mixing_by_powers(const CombMap& f);

// Finite point set, used to encode discrete covers.
using PointSet = std::vector<int>;

inline bool element_contains(const ORect& outer, const ORect& inner) { return rect_contains(outer, inner); }
inline bool element_contains(const OInterval& outer, const OInterval& inner) { return outer.contains(inner); }
inline bool element_contains(const PointSet& outer, const PointSet& inner)
{
    return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

// Element bounds of a cover, indexed 0 .. n-1.
template <class Element>
struct CoverHandle {
    std::vector<Element> elements;

    std::size_t size() const noexcept { return elements.size(); }
};

// Both clauses: every element of u1 lies in some element of u2, and every
// element of u2 contains some element of u1.
template <class Element>
bool is_finer_cover(const CoverHandle<Element>& u1, const CoverHandle<Element>& u2)
{
    for (const auto& e1 : u1.elements) {
        if (std::none_of(u2.elements.begin(), u2.elements.end(),
                         [&](const Element& e2) { return element_contains(e2, e1); })) {
            return false;
        }
    }
    for (const auto& e2 : u2.elements) {
        if (std::none_of(u1.elements.begin(), u1.elements.end(),
                         [&](const Element& e1) { return element_contains(e2, e1); })) {
            return false;
        }
    }
    return true;
}

// f1 on u1 is finer than f2 on u2: u1 is finer than u2, and for EVERY pair
// U1 in U2, each element of f1(U1) lies in some element of f2(U2).
template <class Element>
bool is_finer_map(const CombMap& f1, const CoverHandle<Element>& u1, const CombMap& f2,
                  const CoverHandle<Element>& u2)
{
    if (f1.size() != u1.size() || f2.size() != u2.size()) {
        return false;
    }
    if (!is_finer_cover(u1, u2)) {
        return false;
    }
    for (std::size_t a = 0; a < u1.size(); ++a) {
        for (std::size_t b = 0; b < u2.size(); ++b) {
            if (!element_contains(u2.elements[b], u1.elements[a])) {
                continue;
            }
            for (auto w1 : f1.image(a)) {
                const auto img2 = f2.image(b);
                const bool covered = std::any_of(img2.begin(), img2.end(), [&](auto w2) {
                    return element_contains(u2.elements[w2], u1.elements[w1]);
                });
                if (!covered) {
                    return false;
                }
            }
        }
    }
    return true;
}

// Exact minimal representation W in F(U) <=> W meets f(U), computed in
// rational arithmetic from the exact parameters. Only the 1-D maps.
CombMap minimal_representation(const MapSpec& m, const CoverHandle<OInterval>& u);

} // namespace finres

#endif
