#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

namespace sisi {

/// Shortest decimal form that reads back to the same double; used in CSV output.
inline std::string full_precision(double v) {
    std::array<char, 40> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), res.ptr);
}

/// Five decimals for human-readable summaries; small magnitudes switch to
/// scientific notation so rates like 1.73e-10 stay legible.
inline std::string summary_number(double v) {
    std::array<char, 64> buf{};
    const double a = std::abs(v);
    if (a != 0.0 && std::isfinite(v) && (a < 1e-3 || a >= 1e9))
        std::snprintf(buf.data(), buf.size(), "%.5e", v);
    else
        std::snprintf(buf.data(), buf.size(), "%.5f", v);
    return buf.data();
}

}  // namespace sisi
