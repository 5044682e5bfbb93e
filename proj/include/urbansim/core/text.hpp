#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace urbansim {

/// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

double parse_double(std::string_view s);
std::int64_t parse_int(std::string_view s);
std::uint64_t parse_u64(std::string_view s);

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

/// Splits on runs of whitespace.
std::vector<std::string> split_ws(std::string_view s);

}  // namespace urbansim
