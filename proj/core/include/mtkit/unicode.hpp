#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// UTF-8 helpers. Case mapping, character classes and normalization are
// delegated to ICU; everything here operates on std::string holding UTF-8.
namespace mtkit::unicode {

// Offset of the first invalid byte, or nullopt when `text` is valid UTF-8.
std::optional<std::size_t> find_invalid_utf8(std::string_view text);

// Decodes the code point at `pos` and advances `pos`. Input must be valid.
char32_t next_code_point(std::string_view text, std::size_t& pos);
std::string encode(char32_t cp);
std::u32string decode(std::string_view text);
std::string encode(std::u32string_view text);

// Splits into one string per code point.
std::vector<std::string> characters(std::string_view text);
std::size_t length(std::string_view text);

// Canonical composition (NFC).
std::string nfc(std::string_view text);
bool is_nfc(std::string_view text);

std::string to_lower(std::string_view text);
// Title-cases the first letter, leaves the rest untouched.
std::string upper_first(std::string_view text);

bool is_letter(char32_t cp);
bool is_upper(char32_t cp);
bool is_digit(char32_t cp);
bool is_alnum(char32_t cp);
bool is_space(char32_t cp);
bool has_letter(std::string_view text);
bool has_upper(std::string_view text);

// Whitespace (ASCII space, tab, CR, LF, FF, VT) tokenization.
std::vector<std::string_view> split_whitespace(std::string_view text);
std::size_t count_tokens(std::string_view text);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace mtkit::unicode
