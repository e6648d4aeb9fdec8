#include "ckmig/units.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "ckmig/errors.hpp"

namespace ckmig::units {

double parse_duration(std::string_view text) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr == begin) {
    throw DomainError("invalid duration '" + std::string(text) + "'");
  }
  const std::string_view suffix(ptr, static_cast<std::size_t>(end - ptr));
  double scale = 0.0;
  if (suffix.empty() || suffix == "m" || suffix == "min") {
    scale = kMinute;
  } else if (suffix == "h") {
    scale = kHour;
  } else if (suffix == "d") {
    scale = kDay;
  } else if (suffix == "w") {
    scale = kWeek;
  } else if (suffix == "mo") {
    scale = kMonth;
  } else if (suffix == "y") {
    scale = kYear;
  } else {
    throw DomainError("unknown duration suffix in '" + std::string(text) +
                      "' (use m, h, d, w, mo, y)");
  }
  const double minutes = value * scale;
  if (!(minutes > 0.0) || !std::isfinite(minutes)) {
    throw DomainError("duration must be positive: '" + std::string(text) + "'");
  }
  return minutes;
}

}  // namespace ckmig::units
