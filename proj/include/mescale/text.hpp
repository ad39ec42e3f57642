#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mescale {

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

/// Strict full-string parse; throws ParseError on trailing garbage.
double parse_double(std::string_view text);

std::vector<std::string> split(std::string_view text, char sep);
std::string_view trim(std::string_view text);

}  // namespace mescale
