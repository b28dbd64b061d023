#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tokforge/common/io.hpp"
#include "tokforge/corpus/document.hpp"

namespace tokforge::corpus {

struct DiversityReport {
  /// (token, count), most frequent first, ties by token bytes.
  std::vector<std::pair<std::string, std::size_t>> frequencies;
  std::size_t total_tokens = 0;
  std::size_t distinct_tokens = 0;
  double entropy_bits = 0.0;
  /// Share of all tokens taken by the most frequent ceil(1%) of types.
  double top1pct_mass = 0.0;
  double type_token_ratio = 0.0;
};

/// Word-frequency profile over text::word_tokens. Throws Error(input) when the
/// corpus has no tokens.
[[nodiscard]] DiversityReport diversity_report(const std::vector<Document>& docs);

[[nodiscard]] Json to_json(const DiversityReport& report, std::size_t max_rows = 1000);

}  // namespace tokforge::corpus
