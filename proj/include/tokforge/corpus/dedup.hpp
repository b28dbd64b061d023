#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tokforge/corpus/document.hpp"

namespace tokforge::corpus {

/// Word tokens of the NFC, whitespace-collapsed text joined by U+001F.
[[nodiscard]] std::string exact_fingerprint(std::string_view text);

/// Keeps the first document of every fingerprint, preserving order.
[[nodiscard]] FilterResult exact_dedup(const std::vector<Document>& docs);

struct SemanticDedupOptions {
  double jaccard_threshold = 0.8;
  std::size_t num_hashes = 128;
  std::size_t shingle_size = 5;
  std::uint64_t seed = 0;
};

/// Drops a document when its MinHash-estimated shingle Jaccard with an earlier
/// kept document reaches the threshold. Candidates come from banded LSH over
/// the kept set. Documents with no shingles are always kept.
/// Throws Error(degenerate_input) when every document is shorter than the
/// shingle size, Error(parameter) on a threshold outside (0, 1].
[[nodiscard]] FilterResult semantic_dedup(const std::vector<Document>& docs, const SemanticDedupOptions& options);

}  // namespace tokforge::corpus
