#pragma once

#include <filesystem>

#include "tokforge/tokenizer/bpe_tokenizer.hpp"
#include "tokforge/tokenizer/vocabulary.hpp"

namespace tokforge::tokenizer {

inline constexpr const char* kVocabFile = "vocab.txt";
inline constexpr const char* kMergesFile = "merges.txt";

// vocab.txt:  <escaped token> TAB <id>                     one line per id, ascending
// merges.txt: <escaped left> TAB <escaped right> TAB <rank> TAB <base|extension>
[[nodiscard]] std::string format_vocab(const Vocabulary& vocab);
[[nodiscard]] std::string format_merges(const MergeTable& merges);
[[nodiscard]] Vocabulary parse_vocab(std::string_view text);
[[nodiscard]] MergeTable parse_merges(std::string_view text);

void save_tokenizer(const std::filesystem::path& dir, const Vocabulary& vocab, const MergeTable& merges);
[[nodiscard]] Tokenizer load_tokenizer(const std::filesystem::path& dir);
[[nodiscard]] Vocabulary load_vocab(const std::filesystem::path& dir);

}  // namespace tokforge::tokenizer
