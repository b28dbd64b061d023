#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tokforge/tokenizer/vocabulary.hpp"

namespace tokforge::tokenizer {

struct BpeTrainerOptions {
  std::size_t target_vocab_size = 50000;
  /// Start from all 256 bytes; otherwise only from the bytes seen in the corpus.
  bool byte_fallback = true;
  /// Pairs seen fewer times than this are never merged.
  std::uint64_t min_frequency = 2;
};

struct BpeTrainResult {
  Vocabulary vocab;
  MergeTable merges;
  /// Set when the corpus ran out of eligible pairs before the target size.
  bool exhausted = false;
  std::vector<std::string> warnings;
};

/// Byte-level BPE over raw lines, no pre-tokenization; pairs never span lines.
///
/// Each step merges the most frequent adjacent pair. Ties go to the pair whose
/// concatenation is the smaller byte string, then to the smaller left token.
/// A pair whose concatenation is already a token is not eligible, so every
/// merge adds exactly one token.
[[nodiscard]] BpeTrainResult train_bpe(std::span<const std::string> lines, const BpeTrainerOptions& options);

/// Three-way comparison of (a1 + b1) against (a2 + b2) without building either string.
[[nodiscard]] int compare_concat(std::string_view a1, std::string_view b1, std::string_view a2, std::string_view b2) noexcept;

}  // namespace tokforge::tokenizer
