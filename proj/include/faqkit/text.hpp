#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace faqkit::text {

// 64-bit FNV-1a over raw bytes.
constexpr std::uint64_t fnv1a64(std::string_view bytes,
                                std::uint64_t hash = 0xcbf29ce484222325ULL) {
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

// Lowercase, zero-padded 16-digit hex.
std::string hex64(std::uint64_t value);

// Replaces invalid UTF-8 sequences with U+FFFD.
std::string sanitize_utf8(std::string_view bytes);
bool is_valid_utf8(std::string_view bytes);

// Unicode NFC. Input must be valid UTF-8.
std::string nfc(std::string_view utf8);

// Full Unicode lowercase mapping (root locale).
std::string lowercase(std::string_view utf8);

// Trims and collapses every run of Unicode white space to one U+0020.
std::string normalize_whitespace(std::string_view utf8);

// normalize_whitespace followed by NFC: the canonical form of stored text.
std::string canonical(std::string_view utf8);

// Splits on Unicode white space; never yields empty tokens.
std::vector<std::string> split_whitespace(std::string_view utf8);

// Decodes UTF-8 into code points (input must be valid).
std::u32string to_utf32(std::string_view utf8);
std::string to_utf8(std::u32string_view cps);
void append_utf8(std::string& out, char32_t cp);

bool is_letter(char32_t cp);
bool is_alnum(char32_t cp);
bool is_space(char32_t cp);

bool starts_with_icase(std::string_view haystack, std::string_view prefix);
std::string ascii_lower(std::string_view s);
std::string_view trim_ascii(std::string_view s);

}  // namespace faqkit::text
