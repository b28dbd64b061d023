#include "tokforge/tokenizer/vocab_merge.hpp"

#include <set>
#include <utility>

namespace tokforge::tokenizer {

MergedVocabulary merge_vocab(const Vocabulary& base_vocab, const MergeTable& base_merges, const Vocabulary& ext_vocab,
                             const MergeTable& ext_merges) {
  MergedVocabulary out;
  std::vector<std::string> tokens = base_vocab.tokens();
  for (const std::string& t : ext_vocab.tokens()) {
    if (base_vocab.contains(t)) {
      ++out.overlap;
    } else {
      tokens.push_back(t);
    }
  }

  std::set<std::pair<std::string_view, std::string_view>> base_pairs;
  for (const Merge& m : base_merges) base_pairs.emplace(m.left, m.right);
  std::vector<Merge> merges = base_merges.merges();
  for (const Merge& m : ext_merges) {
    if (base_pairs.contains({m.left, m.right})) continue;
    merges.push_back({m.left, m.right, MergeOrigin::extension});
  }

  out.vocab = Vocabulary(std::move(tokens));
  out.merges = MergeTable(std::move(merges));
  return out;
}

}  // namespace tokforge::tokenizer
