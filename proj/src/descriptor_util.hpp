#pragma once

#include <charconv>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace rispace::detail {

// Splits "head:rest" at the first colon.
inline std::pair<std::string_view, std::optional<std::string_view>> split_descriptor(
    std::string_view s) {
  const auto colon = s.find(':');
  if (colon == std::string_view::npos) return {s, std::nullopt};
  return {s.substr(0, colon), s.substr(colon + 1)};
}

inline double parse_parameter(std::string_view s) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::invalid_argument("'" + std::string(s) + "' is not a number");
  }
  return out;
}

inline std::string format_parameter(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

}  // namespace rispace::detail
