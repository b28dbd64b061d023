#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tokforge::corpus {

enum class Smoothing { add_k, interpolated };

[[nodiscard]] std::string_view to_string(Smoothing s) noexcept;
[[nodiscard]] Smoothing smoothing_from_string(std::string_view name);

struct NgramOptions {
  int order = 3;
  Smoothing smoothing = Smoothing::interpolated;
  /// Pseudo-count for add-k.
  double add_k = 1.0;
  /// Absolute discount for interpolated Kneser-Ney, in (0, 1].
  double discount = 0.75;
  /// Training tokens seen fewer times than this are mapped to <unk>.
  std::size_t unk_min_count = 1;
};

/// Word-level n-gram model over the tokens of text::word_tokens.
///
/// Every document is padded with order-1 <s> symbols and closed by </s>. The
/// prediction vocabulary is the kept training types plus </s> and <unk>, and
/// for every context the next-token distribution over it sums to one.
///
/// add_k: (c(h,w) + k) / (c(h) + k|V|) on the highest order only.
/// interpolated: Kneser-Ney with continuation counts below the top order,
/// bottoming out in the uniform distribution over V.
class NgramLM {
 public:
  static constexpr std::string_view kBos = "<s>";
  static constexpr std::string_view kEos = "</s>";
  static constexpr std::string_view kUnk = "<unk>";

  /// Throws Error(input) if the documents hold no tokens at all.
  [[nodiscard]] static NgramLM train(std::span<const std::string> documents, const NgramOptions& options);
  [[nodiscard]] static NgramLM train_tokens(std::span<const std::vector<std::string>> documents, const NgramOptions& options);

  /// p(word | history); only the last order-1 history tokens matter and a
  /// short history is left-padded with <s>.
  [[nodiscard]] double prob(std::span<const std::string> history, std::string_view word) const;

  /// Prediction vocabulary: kept types, then </s> and <unk>.
  [[nodiscard]] std::vector<std::string> vocabulary() const;
  [[nodiscard]] std::size_t vocab_size() const noexcept { return types_.size() - 1; }
  [[nodiscard]] const NgramOptions& options() const noexcept { return options_; }

  /// exp(-(1/T) sum log p) over the T word tokens plus </s>.
  /// Throws Error(undefined_ppl) for a document without tokens.
  [[nodiscard]] double perplexity(std::string_view document) const;
  [[nodiscard]] double perplexity_tokens(std::span<const std::string> tokens) const;

 private:
  using Id = std::uint32_t;
  static constexpr Id kBosId = 0;
  static constexpr Id kEosId = 1;
  static constexpr Id kUnkId = 2;

  struct ContextStats {
    std::uint64_t total = 0;
    std::unordered_map<Id, std::uint64_t> next;
  };
  using Table = std::unordered_map<std::string, ContextStats>;

  NgramLM() = default;
  [[nodiscard]] Id lookup(std::string_view token) const;
  [[nodiscard]] long double prob_ids(std::span<const Id> history, Id word) const;
  [[nodiscard]] long double interpolated(std::span<const Id> history, Id word, int order) const;
  static std::string context_key(std::span<const Id> ids);

  NgramOptions options_;
  std::vector<std::string> types_;  // id -> token; <s>, </s>, <unk> first
  std::unordered_map<std::string, Id> ids_;
  std::vector<Table> tables_;  // tables_[k-1]: contexts of length k-1
};

}  // namespace tokforge::corpus
