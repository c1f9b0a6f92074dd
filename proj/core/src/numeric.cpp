#include "rfq/numeric.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "rfq/error.hpp"
#include "rfq/logic/text.hpp"

namespace rfq {

std::string format_double(double value) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) {
    throw std::runtime_error("cannot format double");
  }
  return {buf.data(), end};
}

std::string format_fixed(double value, int decimals) {
  if (value == 0.0) {
    value = 0.0;  // drop the sign of -0
  }
  std::array<char, 128> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, decimals);
  if (ec != std::errc{}) {
    throw std::runtime_error("cannot format double");
  }
  std::string out(buf.data(), end);
  // "-0.000000" after rounding a tiny negative value.
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) {
    out.erase(0, 1);
  }
  return out;
}

double parse_double(std::string_view text) {
  text = logic::trim(text);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError("not a number: '" + std::string(text) + "'");
  }
  return value;
}

long long parse_int(std::string_view text) {
  text = logic::trim(text);
  long long value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ParseError("not an integer: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace rfq
