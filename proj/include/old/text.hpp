#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace old {

std::string_view trim(std::string_view s);

// Splits on a single-character separator; fields are trimmed. No quoting:
// all file formats in this toolkit are plain comma/whitespace text.
std::vector<std::string_view> split(std::string_view line, char sep);

// Whitespace tokenization (any run of spaces/tabs).
std::vector<std::string_view> split_ws(std::string_view line);

// Shortest round-trip decimal form of a double (std::to_chars).
std::string format_double(double v);

// Strict numeric parsing; the whole token must be consumed.
// `context` goes into the ParseError message, e.g. "attrs.csv line 7".
double parse_double(std::string_view token, const std::string& context);
long long parse_int(std::string_view token, const std::string& context);

std::string to_lower(std::string_view s);

}  // namespace old
