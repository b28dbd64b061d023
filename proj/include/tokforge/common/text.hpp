#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace tokforge::text {

/// Decodes UTF-8 into code points; malformed sequences become U+FFFD.
[[nodiscard]] std::u32string decode_utf8(std::string_view bytes);
[[nodiscard]] std::string encode_utf8(std::u32string_view cps);
[[nodiscard]] bool is_valid_utf8(std::string_view bytes) noexcept;

/// Length of the longest prefix that does not end inside a multi-byte sequence.
[[nodiscard]] std::size_t complete_utf8_prefix(std::string_view bytes) noexcept;

[[nodiscard]] std::string nfc(std::string_view utf8);

/// Collapses every run of Unicode whitespace into one ASCII space and trims both ends.
[[nodiscard]] std::string collapse_whitespace(std::string_view utf8);

/// NFC followed by whitespace collapsing.
[[nodiscard]] std::string normalize(std::string_view utf8);

[[nodiscard]] bool is_han(char32_t cp) noexcept;
/// Han ideographs plus CJK punctuation and full-width forms.
[[nodiscard]] bool is_cjk_symbol(char32_t cp) noexcept;
[[nodiscard]] bool is_space(char32_t cp) noexcept;

/// Word-level tokens: each CJK code point is its own token, everything else is
/// split on whitespace.
[[nodiscard]] std::vector<std::string> word_tokens(std::string_view utf8);

struct ScriptCounts {
  std::size_t letters = 0;  // alphabetic code points, Han included
  std::size_t han = 0;
  std::size_t latin = 0;
};

[[nodiscard]] ScriptCounts count_scripts(std::string_view utf8);

}  // namespace tokforge::text
