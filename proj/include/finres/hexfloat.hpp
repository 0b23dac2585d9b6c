#ifndef FINRES_HEXFLOAT_HPP
#define FINRES_HEXFLOAT_HPP

#include <string>
#include <string_view>

namespace finres {

// Lowercase C99 hexadecimal floating-point literal, e.g. "0x1.6666666666666p+0".
// Round-trips bit-exactly through parse_real.
std::string format_hex(double x);

// Accepts hex literals and ordinary decimal notation (rounded to nearest).
// Throws domain_error on trailing garbage or non-finite values.
double parse_real(std::string_view text);

} // namespace finres

#endif
