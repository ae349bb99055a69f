#pragma once

#include <cstdio>
#include <string>

namespace gct {

/// Fixed-point formatting, e.g. fixed(1.5, 4) -> "1.5000".
inline std::string fixed(double v, int precision) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
    return buf;
}

/// Shortest representation that round-trips within 1e-9 for the value
/// magnitudes the toolkit emits (12 significant digits).
inline std::string compact(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace gct
