#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tokforge/common/io.hpp"
#include "tokforge/tokenizer/bpe_tokenizer.hpp"

namespace tokforge::tokenizer {

struct NamedTokenizer {
  std::string name;
  const Tokenizer* tokenizer;
};

struct TokenizerStats {
  std::string name;
  std::size_t total_lines = 0;
  std::size_t total_tokens = 0;
  double mean_tokens_per_line = 0.0;
};

struct TokenizerStatsReport {
  std::vector<TokenizerStats> tokenizers;
  /// 1 - second mean / first mean; present only when exactly two tokenizers are compared.
  std::optional<double> reduction_ratio;
  /// Lines where the second tokenizer used more tokens than the first (two-tokenizer case only).
  std::optional<std::size_t> lines_with_more_tokens;
};

/// Encodes every non-empty line with every tokenizer over the identical line set.
[[nodiscard]] TokenizerStatsReport tok_stats(std::span<const std::string> lines, std::span<const NamedTokenizer> tokenizers,
                                             std::size_t threads = 1);

[[nodiscard]] double reduction_ratio(double base_mean, double extended_mean);

[[nodiscard]] Json to_json(const TokenizerStatsReport& report);

}  // namespace tokforge::tokenizer
