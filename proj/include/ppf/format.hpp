#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ppf {

/// Shortest decimal form that parses back to the identical double.
std::string format_number(double value);

/// Strict decimal parse of the whole token; throws ParseError.
double parse_number(std::string_view token);

/// Comma-separated list of numbers; throws ParseError on any bad token.
std::vector<double> parse_number_list(std::string_view text);

}  // namespace ppf
