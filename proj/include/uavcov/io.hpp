#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace uavcov::io {

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

/// Splits a CSV document into rows of fields. The first row must equal
/// `header`; it is checked and dropped. Blank lines are skipped.
std::vector<std::vector<std::string>> parse_csv(std::string_view text,
                                                std::string_view header);

long long parse_int(const std::string& field);
double parse_double(const std::string& field);

/// Shortest decimal text that reads back to exactly `value`.
std::string format_double(double value);

}  // namespace uavcov::io
