#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace transrel {

std::string_view trim(std::string_view text) noexcept;

std::string to_lower_ascii(std::string_view text);

/// Splits text into lines on '\n'. A trailing newline does not start an
/// extra line; a trailing '\r' on each line is left in place.
std::vector<std::string_view> split_lines(std::string_view text);

std::vector<std::string_view> split(std::string_view text, char sep);

/// Decodes UTF-8 into code points. Invalid bytes decode as U+FFFD.
std::u32string decode_utf8(std::string_view text);

/// CJK unified ideographs (basic block plus extensions A and B, and the
/// compatibility block).
bool is_han(char32_t cp) noexcept;

/// Number of Han characters in text if every code point is Han, else -1.
int han_length(std::string_view text);

std::string read_file(const std::string& path);

/// Writes through a temporary sibling file and renames it into place.
void write_file_atomic(const std::string& path, std::string_view contents);

}  // namespace transrel
