#include "tokforge/common/language.hpp"

#include <fmt/format.h>

#include "tokforge/common/error.hpp"
#include "tokforge/common/text.hpp"

namespace tokforge {

std::string_view to_string(Language lang) noexcept {
  switch (lang) {
    case Language::zh: return "zh";
    case Language::en: return "en";
    case Language::other: return "other";
    case Language::mixed: return "mixed";
  }
  return "other";
}

Language language_from_string(std::string_view name) {
  if (name == "zh") return Language::zh;
  if (name == "en") return Language::en;
  if (name == "other") return Language::other;
  if (name == "mixed") return Language::mixed;
  throw Error(ErrorKind::validation, fmt::format("unknown language '{}'", name));
}

Language detect_language(std::string_view utf8, const LanguageThresholds& t) {
  const text::ScriptCounts counts = text::count_scripts(utf8);
  if (counts.letters == 0) return Language::other;
  const double han = static_cast<double>(counts.han) / static_cast<double>(counts.letters);
  const double latin = static_cast<double>(counts.latin) / static_cast<double>(counts.letters);
  if (latin >= t.en_min_latin && han < t.en_max_han) return Language::en;
  if (han >= t.zh_min_han && latin < t.zh_max_latin) return Language::zh;
  if (han >= t.mixed_floor && latin >= t.mixed_floor) return Language::mixed;
  return Language::other;
}

}  // namespace tokforge
