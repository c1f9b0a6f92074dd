#pragma once

#include <string>
#include <string_view>

namespace rfq {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double value);

/// Fixed-point with the given number of decimals ("%.6f" style).
std::string format_fixed(double value, int decimals);

/// Strict parse of a whole token; throws ParseError.
double parse_double(std::string_view text);
long long parse_int(std::string_view text);

}  // namespace rfq
