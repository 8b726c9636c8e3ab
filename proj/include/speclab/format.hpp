#pragma once

#include <cstdint>
#include <cstdio>
#include <string>

namespace speclab {

/// Shortest round-trippable decimal form (17 significant digits).
inline std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Renders an exact eigenvalue given in quarter units as a reduced fraction,
/// e.g. 1 -> "1/4", 4 -> "1", 9 -> "9/4", 6 -> "3/2".
inline std::string fmt_quarters(std::int64_t quarters) {
    std::int64_t num = quarters;
    std::int64_t den = 4;
    while (num % 2 == 0 && den % 2 == 0) {
        num /= 2;
        den /= 2;
    }
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

} // namespace speclab
