#ifndef DECOLAB_FORMAT_HPP
#define DECOLAB_FORMAT_HPP

#include <charconv>
#include <string>
#include <system_error>

namespace decolab {

/// Locale-independent decimal text with 17 significant digits.
inline std::string precise(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

/// Shortest text that parses back to exactly `x`.
inline std::string shortest(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

}  // namespace decolab

#endif  // DECOLAB_FORMAT_HPP
