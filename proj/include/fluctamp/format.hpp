#pragma once

#include <cstddef>
#include <string>
#include <string_view>

namespace fluctamp {

/// Locale-independent decimal rendering with 17 significant digits.
std::string format_double(double value);

/// Locale-independent parsing; throw IoError on malformed input.
double parse_double(std::string_view text);
std::size_t parse_size(std::string_view text);

}  // namespace fluctamp
