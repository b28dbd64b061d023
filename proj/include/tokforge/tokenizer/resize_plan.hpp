#pragma once

#include <vector>

#include "tokforge/common/io.hpp"
#include "tokforge/tokenizer/vocabulary.hpp"

namespace tokforge::tokenizer {

enum class InitRule { mean_of_copied, zero };

[[nodiscard]] std::string_view to_string(InitRule rule) noexcept;
[[nodiscard]] InitRule init_rule_from_string(std::string_view name);

/// Instructions for growing an embedding matrix from the base vocabulary to a
/// merged one. Only embedding rows are trainable under the plan; every other
/// parameter stays frozen.
struct ResizePlan {
  std::size_t old_size = 0;
  std::size_t new_size = 0;
  std::size_t embedding_dim = 0;
  std::vector<std::pair<TokenId, TokenId>> copied_rows;  // old id -> new id
  std::vector<std::pair<TokenId, InitRule>> new_rows;
  std::string trainable_scope = "word_embeddings";
};

/// Throws Error(consistency) when a base token is missing from `merged` or has
/// moved to a different id.
[[nodiscard]] ResizePlan resize_plan(const Vocabulary& base, const Vocabulary& merged, std::size_t embedding_dim,
                                     InitRule rule = InitRule::mean_of_copied);

[[nodiscard]] Json to_json(const ResizePlan& plan);

}  // namespace tokforge::tokenizer
