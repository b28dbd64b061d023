#include "tokforge/tokenizer/bpe_tokenizer.hpp"

#include <queue>

#include <fmt/format.h>

#include "tokforge/common/error.hpp"
#include "tokforge/common/escape.hpp"

namespace tokforge::tokenizer {

Tokenizer::Tokenizer(Vocabulary vocab, MergeTable merges) : vocab_(std::move(vocab)), merges_(std::move(merges)) {
  byte_ids_.fill(-1);
  for (int b = 0; b < 256; ++b) {
    if (auto id = vocab_.find(std::string(1, static_cast<char>(b)))) byte_ids_[b] = *id;
  }
  ranks_.reserve(merges_.size());
  for (std::size_t rank = 0; rank < merges_.size(); ++rank) {
    const Merge& m = merges_[rank];
    const auto left = vocab_.find(m.left);
    const auto right = vocab_.find(m.right);
    const auto result = vocab_.find(m.left + m.right);
    if (!left || !right || !result) {
      throw Error(ErrorKind::validation, fmt::format("merge {} ('{}' '{}') references tokens outside the vocabulary",
                                                     rank, escape_bytes(m.left), escape_bytes(m.right)));
    }
    if (!ranks_.emplace(pair_key(*left, *right), RankedMerge{static_cast<std::uint32_t>(rank), *result}).second) {
      throw Error(ErrorKind::validation, fmt::format("merge {} ('{}' '{}') duplicates an earlier rule", rank,
                                                     escape_bytes(m.left), escape_bytes(m.right)));
    }
  }
}

std::vector<TokenId> Tokenizer::encode(std::string_view text) const {
  const std::size_t n = text.size();
  std::vector<TokenId> sym(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto b = static_cast<std::uint8_t>(text[i]);
    if (byte_ids_[b] < 0) {
      std::size_t end = i + 1;
      while (end < n && byte_ids_[static_cast<std::uint8_t>(text[end])] < 0) ++end;
      throw Error(ErrorKind::encoding, fmt::format("bytes [{}, {}) '{}' have no token and the vocabulary lacks byte fallback",
                                                   i, end, escape_bytes(text.substr(i, end - i))));
    }
    sym[i] = static_cast<TokenId>(byte_ids_[b]);
  }
  if (n < 2 || ranks_.empty()) return sym;

  // Doubly linked list over byte positions; a merged symbol lives at its left position.
  std::vector<std::int32_t> prev(n), next(n);
  std::vector<bool> alive(n, true);
  for (std::size_t i = 0; i < n; ++i) {
    prev[i] = static_cast<std::int32_t>(i) - 1;
    next[i] = i + 1 < n ? static_cast<std::int32_t>(i + 1) : -1;
  }

  using Candidate = std::pair<std::uint32_t, std::int32_t>;  // (rank, left position)
  std::priority_queue<Candidate, std::vector<Candidate>, std::greater<>> heap;
  auto push_pair = [&](std::int32_t pos) {
    if (pos < 0 || next[pos] < 0) return;
    const auto it = ranks_.find(pair_key(sym[pos], sym[next[pos]]));
    if (it != ranks_.end()) heap.emplace(it->second.rank, pos);
  };
  for (std::size_t i = 0; i + 1 < n; ++i) push_pair(static_cast<std::int32_t>(i));

  std::uint32_t watermark = 0;
  while (!heap.empty()) {
    const auto [rank, pos] = heap.top();
    heap.pop();
    if (rank < watermark || !alive[pos] || next[pos] < 0) continue;
    const std::int32_t right = next[pos];
    const auto it = ranks_.find(pair_key(sym[pos], sym[right]));
    if (it == ranks_.end() || it->second.rank != rank) continue;
    watermark = rank;
    sym[pos] = it->second.result;
    alive[right] = false;
    next[pos] = next[right];
    if (next[pos] >= 0) prev[next[pos]] = pos;
    push_pair(prev[pos]);
    push_pair(pos);
  }

  std::vector<TokenId> out;
  for (std::int32_t i = 0; i >= 0; i = next[i]) out.push_back(sym[i]);
  return out;
}

std::string Tokenizer::decode(std::span<const TokenId> ids) const {
  std::string out;
  for (TokenId id : ids) {
    if (id >= vocab_.size()) {
      throw Error(ErrorKind::decoding, fmt::format("token id {} out of range for vocabulary of {}", id, vocab_.size()));
    }
    out += vocab_.token(id);
  }
  return out;
}

}  // namespace tokforge::tokenizer
