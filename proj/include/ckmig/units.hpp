#pragma once

#include <string_view>

namespace ckmig::units {

// All model times are minutes.
inline constexpr double kMinute = 1.0;
inline constexpr double kHour = 60.0;
inline constexpr double kDay = 1440.0;
inline constexpr double kWeek = 7 * kDay;    // 10080
inline constexpr double kMonth = 30 * kDay;  // 43200
// Twelve 30-day months. This is the convention under which the published
// yield table is reproduced to its printed precision.
inline constexpr double kYear = 12 * kMonth;  // 518400

// Parses "1d", "1w", "1mo", "1y", "90m", "2.5h" or a bare number of minutes.
// Throws DomainError on malformed or non-positive input.
double parse_duration(std::string_view text);

}  // namespace ckmig::units
