#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace forkedtl {

inline constexpr int printed_digits = 12;

/// %.12g
inline std::string format_sig(double x, int digits = printed_digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

/// The double nearest to x printed with 12 significant digits, so JSON and
/// text carry the same value.
inline double round_sig(double x, int digits = printed_digits) {
    if (!std::isfinite(x)) return x;
    return std::strtod(format_sig(x, digits).c_str(), nullptr);
}

} // namespace forkedtl
