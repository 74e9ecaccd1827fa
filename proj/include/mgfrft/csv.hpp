#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mgfrft::csv {

/// Splits one CSV record. Double-quoted fields may contain commas and
/// doubled quotes (""). Surrounding whitespace of unquoted fields is trimmed.
std::vector<std::string> split_line(std::string_view line);

/// Parses a floating-point field; throws ParseError with the given line number.
double parse_double(std::string_view field, std::size_t line);
std::size_t parse_size(std::string_view field, std::size_t line);

/// Shortest representation that round-trips through parse_double.
std::string format_double(double value);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

/// Splits text into lines, dropping a trailing '\r' and the final empty line.
std::vector<std::string> lines(std::string_view text);

}  // namespace mgfrft::csv
