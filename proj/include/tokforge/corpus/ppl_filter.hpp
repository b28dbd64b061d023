#pragma once

#include <variant>
#include <vector>

#include "tokforge/corpus/document.hpp"
#include "tokforge/corpus/ngram_lm.hpp"

namespace tokforge::corpus {

struct AbsoluteThreshold {
  double max_ppl;
};

/// Keeps the ceil(n * percentile / 100) lowest-perplexity documents of the batch.
struct PercentileCutoff {
  double percentile = 90.0;
};

using PplCutoff = std::variant<AbsoluteThreshold, PercentileCutoff>;

struct PplFilterResult {
  FilterResult filtered;
  /// Perplexity of every input document, in input order; NaN for documents without tokens.
  std::vector<double> perplexities;
};

/// Documents without tokens have no perplexity and are always removed.
/// Ties at the percentile boundary go to the earlier document.
/// Throws Error(parameter) when the percentile lies outside (0, 100).
[[nodiscard]] PplFilterResult ppl_filter(const std::vector<Document>& docs, const NgramLM& lm, const PplCutoff& cutoff);

}  // namespace tokforge::corpus
