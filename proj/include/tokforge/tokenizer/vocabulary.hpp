#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tokforge::tokenizer {

using TokenId = std::uint32_t;

struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
};

/// Id-ordered set of unique, non-empty byte strings. Ids are contiguous from 0.
class Vocabulary {
 public:
  Vocabulary() = default;
  /// Throws Error(validation) on empty or duplicate tokens.
  explicit Vocabulary(std::vector<std::string> tokens);

  /// The 256 single-byte tokens, id == byte value.
  [[nodiscard]] static Vocabulary bytes();

  [[nodiscard]] std::size_t size() const noexcept { return tokens_.size(); }
  [[nodiscard]] const std::string& token(TokenId id) const { return tokens_.at(id); }
  [[nodiscard]] const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  [[nodiscard]] std::optional<TokenId> find(std::string_view token) const;
  [[nodiscard]] bool contains(std::string_view token) const { return find(token).has_value(); }

  /// True iff every single byte value has its own token.
  [[nodiscard]] bool byte_fallback() const noexcept { return single_bytes_ == 256; }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) { return a.tokens_ == b.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId, StringHash, std::equal_to<>> index_;
  std::size_t single_bytes_ = 0;
};

enum class MergeOrigin { base, extension };

[[nodiscard]] std::string_view to_string(MergeOrigin origin) noexcept;
[[nodiscard]] MergeOrigin merge_origin_from_string(std::string_view name);

struct Merge {
  std::string left;
  std::string right;
  MergeOrigin origin = MergeOrigin::base;

  friend bool operator==(const Merge&, const Merge&) = default;
};

/// Ranked merge rules; rank is the index. Every base-origin rule precedes every
/// extension-origin rule.
class MergeTable {
 public:
  MergeTable() = default;
  explicit MergeTable(std::vector<Merge> merges);

  [[nodiscard]] std::size_t size() const noexcept { return merges_.size(); }
  [[nodiscard]] const Merge& operator[](std::size_t rank) const { return merges_.at(rank); }
  [[nodiscard]] const std::vector<Merge>& merges() const noexcept { return merges_; }
  [[nodiscard]] auto begin() const noexcept { return merges_.begin(); }
  [[nodiscard]] auto end() const noexcept { return merges_.end(); }

  friend bool operator==(const MergeTable&, const MergeTable&) = default;

 private:
  std::vector<Merge> merges_;
};

}  // namespace tokforge::tokenizer
