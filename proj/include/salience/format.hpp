#pragma once

#include <string>
#include <string_view>

namespace salience {

// Shortest representation that parses back to the same double.
std::string format_double(double value);

// Throws DataError on malformed input.
double parse_double(std::string_view text);
std::size_t parse_count(std::string_view text);

}  // namespace salience
