#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tokforge/tokenizer/vocabulary.hpp"

namespace tokforge::tokenizer {

/// A vocabulary plus its merge table, compiled for encoding.
///
/// Encoding applies merges strictly in rank order: every occurrence of the
/// rank-r pair is merged left to right before any rank r+1 rule is considered,
/// and a rule never fires once a higher rank has been applied. This is the same
/// sequence the trainer produced, and it makes a base+extension table behave
/// exactly like the base table followed by the extension rules.
///
/// Immutable after construction; encode/decode are safe to call concurrently.
class Tokenizer {
 public:
  /// Throws Error(validation) if a merge references a token missing from the
  /// vocabulary or a pair appears twice.
  Tokenizer(Vocabulary vocab, MergeTable merges);

  [[nodiscard]] std::vector<TokenId> encode(std::string_view text) const;
  [[nodiscard]] std::string decode(std::span<const TokenId> ids) const;
  [[nodiscard]] std::size_t count_tokens(std::string_view text) const { return encode(text).size(); }

  [[nodiscard]] const Vocabulary& vocab() const noexcept { return vocab_; }
  [[nodiscard]] const MergeTable& merges() const noexcept { return merges_; }

 private:
  struct RankedMerge {
    std::uint32_t rank;
    TokenId result;
  };

  static constexpr std::uint64_t pair_key(TokenId a, TokenId b) noexcept {
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }

  Vocabulary vocab_;
  MergeTable merges_;
  std::unordered_map<std::uint64_t, RankedMerge> ranks_;
  std::array<std::int64_t, 256> byte_ids_{};
};

}  // namespace tokforge::tokenizer
