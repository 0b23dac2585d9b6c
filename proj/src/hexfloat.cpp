#include "finres/hexfloat.hpp"

#include "finres/error.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace finres {

std::string format_hex(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", x);
    return buf;
}

double parse_real(std::string_view text)
{
    const std::string s(text);
    if (s.empty()) {
        throw domain_error("empty number");
    }
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(s.c_str(), &end);
    if (end != s.c_str() + s.size()) {
        throw domain_error("malformed number '" + s + "'");
    }
    if (!std::isfinite(v)) {
        throw domain_error("non-finite number '" + s + "'");
    }
    return v;
}

} // namespace finres
