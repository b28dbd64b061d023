#pragma once

#include "tokforge/tokenizer/vocabulary.hpp"

namespace tokforge::tokenizer {

struct MergedVocabulary {
  Vocabulary vocab;
  MergeTable merges;
  std::size_t overlap = 0;  // tokens present in both inputs
};

/// Union of two tokenizers. Base tokens keep their ids and base merges keep
/// their ranks; extension-only tokens follow in extension id order, then the
/// extension merges whose pair is not already a base rule, tagged `extension`.
[[nodiscard]] MergedVocabulary merge_vocab(const Vocabulary& base_vocab, const MergeTable& base_merges,
                                           const Vocabulary& ext_vocab, const MergeTable& ext_merges);

}  // namespace tokforge::tokenizer
