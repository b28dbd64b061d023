#include "tokforge/common/text.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/uscript.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include "tokforge/common/error.hpp"

namespace tokforge::text {

std::u32string decode_utf8(std::string_view bytes) {
  std::u32string out;
  out.reserve(bytes.size());
  const auto* s = reinterpret_cast<const uint8_t*>(bytes.data());
  const auto length = static_cast<int32_t>(bytes.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c = 0;
    U8_NEXT(s, i, length, c);
    out.push_back(c < 0 ? U'�' : static_cast<char32_t>(c));
  }
  return out;
}

std::string encode_utf8(std::u32string_view cps) {
  std::string out;
  out.reserve(cps.size() * 3);
  for (char32_t cp : cps) {
    uint8_t buf[U8_MAX_LENGTH];
    int32_t n = 0;
    UBool error = false;
    U8_APPEND(buf, n, U8_MAX_LENGTH, static_cast<UChar32>(cp), error);
    if (error) {
      n = 0;
      U8_APPEND_UNSAFE(buf, n, 0xFFFD);
    }
    out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
  }
  return out;
}

bool is_valid_utf8(std::string_view bytes) noexcept {
  const auto* s = reinterpret_cast<const uint8_t*>(bytes.data());
  const auto length = static_cast<int32_t>(bytes.size());
  int32_t i = 0;
  while (i < length) {
    UChar32 c = 0;
    U8_NEXT(s, i, length, c);
    if (c < 0) return false;
  }
  return true;
}

std::size_t complete_utf8_prefix(std::string_view bytes) noexcept {
  // Walk back over at most three continuation bytes to the last lead byte.
  std::size_t n = bytes.size();
  std::size_t back = 0;
  while (back < n && back < 4) {
    const auto b = static_cast<uint8_t>(bytes[n - 1 - back]);
    if ((b & 0xC0) != 0x80) {
      std::size_t need = 1;
      if ((b & 0xE0) == 0xC0) need = 2;
      else if ((b & 0xF0) == 0xE0) need = 3;
      else if ((b & 0xF8) == 0xF0) need = 4;
      return back + 1 >= need ? n : n - 1 - back;
    }
    ++back;
  }
  return n;
}

std::string nfc(std::string_view utf8) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* normalizer = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error(ErrorKind::io, "ICU NFC normalizer unavailable");
  const icu::UnicodeString src = icu::UnicodeString::fromUTF8(icu::StringPiece(utf8.data(), static_cast<int32_t>(utf8.size())));
  const icu::UnicodeString dst = normalizer->normalize(src, status);
  if (U_FAILURE(status)) throw Error(ErrorKind::validation, "NFC normalization failed");
  std::string out;
  dst.toUTF8String(out);
  return out;
}

bool is_space(char32_t cp) noexcept { return u_isUWhiteSpace(static_cast<UChar32>(cp)) != 0; }

std::string collapse_whitespace(std::string_view utf8) {
  const std::u32string cps = decode_utf8(utf8);
  std::u32string out;
  out.reserve(cps.size());
  bool pending_space = false;
  for (char32_t cp : cps) {
    if (is_space(cp)) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(U' ');
    pending_space = false;
    out.push_back(cp);
  }
  return encode_utf8(out);
}

std::string normalize(std::string_view utf8) { return collapse_whitespace(nfc(utf8)); }

bool is_han(char32_t cp) noexcept {
  UErrorCode status = U_ZERO_ERROR;
  return uscript_getScript(static_cast<UChar32>(cp), &status) == USCRIPT_HAN && U_SUCCESS(status);
}

bool is_cjk_symbol(char32_t cp) noexcept {
  return is_han(cp) || (cp >= 0x3000 && cp <= 0x303F) || (cp >= 0xFF00 && cp <= 0xFFEF);
}

std::vector<std::string> word_tokens(std::string_view utf8) {
  std::vector<std::string> tokens;
  std::u32string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(encode_utf8(current));
    current.clear();
  };
  for (char32_t cp : decode_utf8(utf8)) {
    if (is_space(cp)) {
      flush();
    } else if (is_cjk_symbol(cp)) {
      flush();
      tokens.push_back(encode_utf8(std::u32string_view(&cp, 1)));
    } else {
      current.push_back(cp);
    }
  }
  flush();
  return tokens;
}

ScriptCounts count_scripts(std::string_view utf8) {
  ScriptCounts counts;
  for (char32_t cp : decode_utf8(utf8)) {
    const auto c = static_cast<UChar32>(cp);
    if (!u_isalpha(c)) continue;
    ++counts.letters;
    UErrorCode status = U_ZERO_ERROR;
    const UScriptCode script = uscript_getScript(c, &status);
    if (U_FAILURE(status)) continue;
    if (script == USCRIPT_HAN) ++counts.han;
    else if (script == USCRIPT_LATIN) ++counts.latin;
  }
  return counts;
}

}  // namespace tokforge::text
