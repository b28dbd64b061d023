#include "tokforge/tokenizer/vocabulary.hpp"

#include <fmt/format.h>

#include "tokforge/common/error.hpp"
#include "tokforge/common/escape.hpp"

namespace tokforge::tokenizer {

Vocabulary::Vocabulary(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
  index_.reserve(tokens_.size());
  for (std::size_t id = 0; id < tokens_.size(); ++id) {
    const std::string& t = tokens_[id];
    if (t.empty()) throw Error(ErrorKind::validation, fmt::format("token {} is empty", id));
    if (!index_.emplace(t, static_cast<TokenId>(id)).second) {
      throw Error(ErrorKind::validation, fmt::format("duplicate token '{}' at id {}", escape_bytes(t), id));
    }
    if (t.size() == 1) ++single_bytes_;
  }
}

Vocabulary Vocabulary::bytes() {
  std::vector<std::string> tokens;
  tokens.reserve(256);
  for (int b = 0; b < 256; ++b) tokens.emplace_back(1, static_cast<char>(b));
  return Vocabulary(std::move(tokens));
}

std::optional<TokenId> Vocabulary::find(std::string_view token) const {
  const auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::string_view to_string(MergeOrigin origin) noexcept {
  return origin == MergeOrigin::base ? "base" : "extension";
}

MergeOrigin merge_origin_from_string(std::string_view name) {
  if (name == "base") return MergeOrigin::base;
  if (name == "extension") return MergeOrigin::extension;
  throw Error(ErrorKind::validation, fmt::format("unknown merge origin '{}'", name));
}

MergeTable::MergeTable(std::vector<Merge> merges) : merges_(std::move(merges)) {
  bool seen_extension = false;
  for (std::size_t rank = 0; rank < merges_.size(); ++rank) {
    if (merges_[rank].origin == MergeOrigin::extension) {
      seen_extension = true;
    } else if (seen_extension) {
      throw Error(ErrorKind::validation, fmt::format("base merge at rank {} follows an extension merge", rank));
    }
  }
}

}  // namespace tokforge::tokenizer
