#ifndef FINRES_COVER_IO_HPP
#define FINRES_COVER_IO_HPP

#include "finres/cover.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace finres {

// Cover file:
//   dim <n> <p_1> ... <p_n> <kappa> <metric>
//   region <a_1> <w_1> ... <a_n> <w_n>
//   <linear> <k_1> ... <k_n> <lo_1> <hi_1> ... <lo_n> <hi_n>     (one per box)
// Reals are hex floats; boxes appear in the order given.
void write_cover(std::ostream& os, const GridSpec& g, Metric metric,
                 std::span<const std::uint64_t> cover);

struct CoverFile {
    GridSpec grid;
    Metric metric;
    std::vector<std::uint64_t> cover;
};

// Throws parse_error with the offending line number; box bounds must agree
// with the grid bit for bit.
CoverFile read_cover(std::istream& is);

std::string_view to_string(Metric m);
Metric parse_metric(std::string_view s);

} // namespace finres

#endif
