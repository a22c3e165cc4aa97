#pragma once

/// @file csv.hpp
/// @brief Locale-independent number formatting for the CSV outputs.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <system_error>

namespace sotea::csv {

/// Shortest representation that round-trips; empty for NaN.
inline std::string format(double v) {
    if (std::isnan(v)) {
        return {};
    }
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

inline std::string format(const std::optional<double>& v) { return v ? format(*v) : std::string{}; }

/// Version tag written as the first line of every CSV file.
inline constexpr const char* kFormatLine = "# sotea-csv v1";

} // namespace sotea::csv
