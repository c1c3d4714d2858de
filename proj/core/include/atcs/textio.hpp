#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace atcs {

/// Shortest decimal string that parses back to exactly the same double.
/// Non-finite values render as "inf", "-inf", "nan".
std::string format_double(double value);

/// Inverse of format_double; accepts anything strtod does plus "inf"/"nan".
/// Throws std::invalid_argument on malformed input.
double parse_double(std::string_view text);

/// Throws std::invalid_argument unless the text is a plain base-10 integer.
long long parse_integer(std::string_view text);

std::string_view trim(std::string_view text);

/// Flat key-value text file: one `key = value` (or `key value`) pair per
/// line, '#' starts a comment, blank lines ignored. Later keys overwrite
/// earlier ones. Throws std::runtime_error on unreadable files and
/// std::invalid_argument on malformed lines.
std::vector<std::pair<std::string, std::string>> read_key_value_file(
    const std::filesystem::path& path);

void write_key_value_file(const std::filesystem::path& path,
                          const std::vector<std::pair<std::string, std::string>>& pairs);

/// Splits one CSV line on commas. No quoting; none of our schemas needs it.
std::vector<std::string> split_csv_line(const std::string& line);

/// Reads a CSV emitted by this library: skips '#' comment lines, verifies
/// the header line matches `expected_header`, returns the data rows.
std::vector<std::vector<std::string>> read_csv(const std::filesystem::path& path,
                                               const std::string& expected_header);

}  // namespace atcs
