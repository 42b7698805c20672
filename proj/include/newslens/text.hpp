#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Minimal UTF-8 and character-class helpers. Classification covers ASCII,
// Latin-1, Latin Extended-A, Greek and Cyrillic; everything else is treated
// as a caseless letter.
namespace newslens::text {

struct CodePoint {
  char32_t value;
  std::uint32_t byte_offset;
  std::uint8_t byte_length;
};

/// Decodes `s`, throwing ParseError on malformed UTF-8.
std::vector<CodePoint> decode_utf8(std::string_view s);
void append_utf8(std::string& out, char32_t cp);
std::size_t count_code_points(std::string_view s);

bool is_space(char32_t cp);
bool is_punct(char32_t cp);
bool is_digit(char32_t cp);
bool is_upper(char32_t cp);
bool is_apostrophe(char32_t cp);
bool is_hyphen(char32_t cp);
/// Letters, digits and anything else that is neither space nor punctuation.
inline bool is_word(char32_t cp) { return !is_space(cp) && !is_punct(cp); }

char32_t fold_case(char32_t cp);
std::string fold_case(std::string_view s);

/// Byte offset of code point index `char_index` within `s` (s.size() for the end).
std::size_t byte_offset_of(std::string_view s, std::size_t char_index);

}  // namespace newslens::text
