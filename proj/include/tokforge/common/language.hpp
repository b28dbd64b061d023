#pragma once

#include <string_view>

namespace tokforge {

enum class Language { zh, en, other, mixed };

[[nodiscard]] std::string_view to_string(Language lang) noexcept;
/// Throws Error(validation) for names other than zh, en, other, mixed.
[[nodiscard]] Language language_from_string(std::string_view name);

/// Ratios are taken over alphabetic code points (Han counts as alphabetic).
struct LanguageThresholds {
  double zh_min_han = 0.30;
  double zh_max_latin = 0.30;
  double en_min_latin = 0.70;
  double en_max_han = 0.05;
  double mixed_floor = 0.05;
};

/// zh: Han >= 30% and Latin < 30%. en: Latin >= 70% and Han < 5%.
/// mixed: both scripts at or above the 5% floor. Anything else is other.
[[nodiscard]] Language detect_language(std::string_view utf8, const LanguageThresholds& thresholds = {});

}  // namespace tokforge
