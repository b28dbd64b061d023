#include "tokforge/tokenizer/bpe_trainer.hpp"

#include <algorithm>
#include <cstring>
#include <queue>
#include <unordered_map>

#include <fmt/format.h>

#include "tokforge/common/error.hpp"

namespace tokforge::tokenizer {

int compare_concat(std::string_view a1, std::string_view b1, std::string_view a2, std::string_view b2) noexcept {
  const std::size_t n1 = a1.size() + b1.size();
  const std::size_t n2 = a2.size() + b2.size();
  const std::size_t n = std::min(n1, n2);
  for (std::size_t i = 0; i < n; ++i) {
    const auto c1 = static_cast<unsigned char>(i < a1.size() ? a1[i] : b1[i - a1.size()]);
    const auto c2 = static_cast<unsigned char>(i < a2.size() ? a2[i] : b2[i - a2.size()]);
    if (c1 != c2) return c1 < c2 ? -1 : 1;
  }
  if (n1 == n2) return 0;
  return n1 < n2 ? -1 : 1;
}

namespace {

using PairKey = std::uint64_t;
constexpr TokenId kDead = ~TokenId{0};

constexpr PairKey pair_key(TokenId a, TokenId b) noexcept { return (static_cast<PairKey>(a) << 32) | b; }
constexpr TokenId left_of(PairKey k) noexcept { return static_cast<TokenId>(k >> 32); }
constexpr TokenId right_of(PairKey k) noexcept { return static_cast<TokenId>(k & 0xffffffffu); }

struct HeapEntry {
  std::int64_t count;
  PairKey key;
};

class Trainer {
 public:
  Trainer(std::span<const std::string> lines, const BpeTrainerOptions& options) : options_(options) {
    build_alphabet(lines);
    build_symbols(lines);
  }

  BpeTrainResult run() {
    BpeTrainResult result;
    std::vector<Merge> merges;
    auto better = [this](const HeapEntry& x, const HeapEntry& y) { return ranks_before(y, x); };
    std::priority_queue<HeapEntry, std::vector<HeapEntry>, decltype(better)> heap(better);
    for (const auto& [key, count] : counts_) heap.push({count, key});

    while (tokens_.size() < options_.target_vocab_size) {
      std::optional<PairKey> chosen;
      while (!heap.empty()) {
        const HeapEntry top = heap.top();
        const auto it = counts_.find(top.key);
        if (it == counts_.end() || it->second != top.count) {
          heap.pop();
          continue;
        }
        if (static_cast<std::uint64_t>(top.count) < options_.min_frequency) break;
        heap.pop();
        if (token_index_.contains(concat(top.key))) continue;
        chosen = top.key;
        break;
      }
      if (!chosen) {
        result.exhausted = true;
        result.warnings.push_back(fmt::format("corpus exhausted mergeable pairs at {} tokens (target {})",
                                              tokens_.size(), options_.target_vocab_size));
        break;
      }
      const TokenId a = left_of(*chosen);
      const TokenId b = right_of(*chosen);
      merges.push_back({tokens_[a], tokens_[b], MergeOrigin::base});
      const auto c = static_cast<TokenId>(tokens_.size());
      tokens_.push_back(tokens_[a] + tokens_[b]);
      token_index_.emplace(tokens_.back(), c);
      apply(*chosen, c);
      for (PairKey k : touched_) {
        const auto it = counts_.find(k);
        if (it != counts_.end()) heap.push({it->second, k});
      }
    }

    result.vocab = Vocabulary(std::move(tokens_));
    result.merges = MergeTable(std::move(merges));
    return result;
  }

 private:
  void build_alphabet(std::span<const std::string> lines) {
    std::array<bool, 256> present{};
    if (options_.byte_fallback) {
      present.fill(true);
    } else {
      for (const std::string& line : lines) {
        for (char ch : line) present[static_cast<std::uint8_t>(ch)] = true;
      }
    }
    byte_to_id_.fill(kDead);
    for (int b = 0; b < 256; ++b) {
      if (!present[b]) continue;
      byte_to_id_[b] = static_cast<TokenId>(tokens_.size());
      tokens_.emplace_back(1, static_cast<char>(b));
      token_index_.emplace(tokens_.back(), byte_to_id_[b]);
    }
    if (options_.target_vocab_size < tokens_.size()) {
      throw Error(ErrorKind::parameter, fmt::format("target vocabulary size {} is below the initial alphabet of {}",
                                                    options_.target_vocab_size, tokens_.size()));
    }
  }

  void build_symbols(std::span<const std::string> lines) {
    // Identical lines collapse into one weighted sequence, kept in first-seen order.
    std::unordered_map<std::string_view, std::size_t> seen;
    std::vector<std::string_view> unique;
    std::vector<std::uint64_t> weights;
    for (const std::string& line : lines) {
      if (line.empty()) continue;
      auto [it, inserted] = seen.emplace(line, unique.size());
      if (inserted) {
        unique.push_back(line);
        weights.push_back(1);
      } else {
        ++weights[it->second];
      }
    }
    if (unique.empty()) throw Error(ErrorKind::input, "training corpus has no non-empty lines");

    std::size_t total = 0;
    for (auto line : unique) total += line.size();
    sym_.reserve(total);
    prev_.reserve(total);
    next_.reserve(total);
    weight_.reserve(total);
    for (std::size_t u = 0; u < unique.size(); ++u) {
      const auto start = static_cast<std::int32_t>(sym_.size());
      const auto line = unique[u];
      for (std::size_t i = 0; i < line.size(); ++i) {
        const auto pos = static_cast<std::int32_t>(sym_.size());
        sym_.push_back(byte_to_id_[static_cast<std::uint8_t>(line[i])]);
        prev_.push_back(i == 0 ? -1 : pos - 1);
        next_.push_back(i + 1 < line.size() ? pos + 1 : -1);
        weight_.push_back(weights[u]);
      }
      for (std::int32_t pos = start; pos + 1 < static_cast<std::int32_t>(sym_.size()); ++pos) {
        add(pair_key(sym_[pos], sym_[pos + 1]), static_cast<std::int64_t>(weight_[pos]), pos);
      }
    }
    touched_.clear();
  }

  std::string concat(PairKey k) const { return tokens_[left_of(k)] + tokens_[right_of(k)]; }

  // Strict weak ordering: true when x should be merged before y.
  bool ranks_before(const HeapEntry& x, const HeapEntry& y) const {
    if (x.count != y.count) return x.count > y.count;
    const std::string& xa = tokens_[left_of(x.key)];
    const std::string& xb = tokens_[right_of(x.key)];
    const std::string& ya = tokens_[left_of(y.key)];
    const std::string& yb = tokens_[right_of(y.key)];
    const int c = compare_concat(xa, xb, ya, yb);
    if (c != 0) return c < 0;
    return xa < ya;
  }

  void add(PairKey k, std::int64_t w, std::int32_t pos) {
    counts_[k] += w;
    positions_[k].push_back(pos);
    touched_.push_back(k);
  }

  void remove(PairKey k, std::int64_t w) {
    const auto it = counts_.find(k);
    it->second -= w;
    if (it->second == 0) {
      counts_.erase(it);
      positions_.erase(k);
    }
    touched_.push_back(k);
  }

  void apply(PairKey key, TokenId c) {
    touched_.clear();
    const auto node = positions_.extract(key);
    if (node.empty()) return;
    std::vector<std::int32_t> where = std::move(node.mapped());
    std::sort(where.begin(), where.end());
    where.erase(std::unique(where.begin(), where.end()), where.end());

    const TokenId a = left_of(key);
    const TokenId b = right_of(key);
    for (std::int32_t i : where) {
      if (sym_[i] != a) continue;
      const std::int32_t j = next_[i];
      if (j < 0 || sym_[j] != b) continue;
      const auto w = static_cast<std::int64_t>(weight_[i]);
      const std::int32_t p = prev_[i];
      const std::int32_t n = next_[j];
      if (p >= 0) remove(pair_key(sym_[p], a), w);
      if (n >= 0) remove(pair_key(b, sym_[n]), w);
      counts_[key] -= w;

      sym_[i] = c;
      sym_[j] = kDead;
      next_[i] = n;
      if (n >= 0) prev_[n] = i;

      if (p >= 0) add(pair_key(sym_[p], c), w, p);
      if (n >= 0) add(pair_key(c, sym_[n]), w, i);
    }
    counts_.erase(key);
  }

  BpeTrainerOptions options_;
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, TokenId> token_index_;
  std::array<TokenId, 256> byte_to_id_{};

  std::vector<TokenId> sym_;
  std::vector<std::int32_t> prev_;
  std::vector<std::int32_t> next_;
  std::vector<std::uint64_t> weight_;

  std::unordered_map<PairKey, std::int64_t> counts_;
  std::unordered_map<PairKey, std::vector<std::int32_t>> positions_;
  std::vector<PairKey> touched_;
};

}  // namespace

BpeTrainResult train_bpe(std::span<const std::string> lines, const BpeTrainerOptions& options) {
  if (options.target_vocab_size == 0) throw Error(ErrorKind::parameter, "target vocabulary size must be positive");
  Trainer trainer(lines, options);
  return trainer.run();
}

}  // namespace tokforge::tokenizer
