#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace hdlforge::text {

/// Trims every line, collapses internal runs of blanks to one space and drops
/// empty lines. Golden comparisons are done on this form.
std::string normalize_whitespace(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

std::vector<std::string> split_lines(std::string_view s);

std::string_view trim(std::string_view s);

/// Splits on runs of spaces and tabs.
std::vector<std::string> split_ws(std::string_view s);

/// `width` binary digits of `value`, MSB first.
std::string bits(std::uint64_t value, int width);

/// Python-style list repr: ['a', 'b'].
std::string py_list(const std::vector<std::string>& items);

/// English word for small counts ("four"); digits above twenty.
std::string number_word(std::size_t n);

/// Lowercase hex SHA-256 of the input.
std::string sha256_hex(std::string_view data);

/// Wraps `body` in a markdown code fence.
std::string fenced(std::string_view body);

bool starts_with(std::string_view s, std::string_view prefix);

} // namespace hdlforge::text
