#include "tokforge/corpus/dedup.hpp"

#include <unordered_map>
#include <unordered_set>

#include <fmt/format.h>

#include "tokforge/common/error.hpp"
#include "tokforge/common/hash.hpp"
#include "tokforge/common/text.hpp"
#include "tokforge/corpus/minhash.hpp"

namespace tokforge::corpus {

std::string exact_fingerprint(std::string_view text) {
  std::string fp;
  for (const std::string& tok : text::word_tokens(text::normalize(text))) {
    if (!fp.empty()) fp.push_back('\x1f');
    fp += tok;
  }
  return fp;
}

FilterResult exact_dedup(const std::vector<Document>& docs) {
  FilterResult result;
  result.report.stage = "exact_dedup";
  result.report.input = docs.size();
  std::unordered_set<std::string> seen;
  for (const Document& d : docs) {
    if (seen.insert(exact_fingerprint(d.text)).second) result.kept.push_back(d);
  }
  result.report.output = result.kept.size();
  result.report.removed = docs.size() - result.kept.size();
  return result;
}

FilterResult semantic_dedup(const std::vector<Document>& docs, const SemanticDedupOptions& options) {
  if (!(options.jaccard_threshold > 0.0 && options.jaccard_threshold <= 1.0)) {
    throw Error(ErrorKind::parameter, fmt::format("Jaccard threshold {} outside (0, 1]", options.jaccard_threshold));
  }
  if (options.num_hashes == 0 || options.shingle_size == 0) {
    throw Error(ErrorKind::parameter, "num_hashes and shingle_size must be positive");
  }
  FilterResult result;
  result.report.stage = "semantic_dedup";
  result.report.input = docs.size();
  if (docs.empty()) return result;

  bool any_long_enough = false;
  for (const Document& d : docs) {
    if (text::decode_utf8(text::normalize(d.text)).size() >= options.shingle_size) {
      any_long_enough = true;
      break;
    }
  }
  if (!any_long_enough) {
    throw Error(ErrorKind::degenerate_input,
                fmt::format("shingle size {} is longer than every document", options.shingle_size));
  }

  const MinHasher hasher(options.num_hashes, options.seed);
  const Banding banding = choose_banding(options.num_hashes, options.jaccard_threshold);
  std::vector<std::vector<std::uint64_t>> kept_signatures;
  // band bucket key -> indices into kept_signatures
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;

  auto band_key = [&](const std::vector<std::uint64_t>& sig, std::size_t band) {
    std::uint64_t h = splitmix64(band + 1);
    for (std::size_t r = 0; r < banding.rows; ++r) h = splitmix64(h ^ sig[band * banding.rows + r]);
    return h;
  };

  for (const Document& d : docs) {
    const auto shingles = shingle_hashes(d.text, options.shingle_size);
    if (shingles.empty()) {
      result.kept.push_back(d);
      continue;
    }
    const auto sig = hasher.signature(shingles);
    bool duplicate = false;
    std::unordered_set<std::size_t> checked;
    for (std::size_t band = 0; band < banding.bands && !duplicate; ++band) {
      const auto it = buckets.find(band_key(sig, band));
      if (it == buckets.end()) continue;
      for (std::size_t k : it->second) {
        if (!checked.insert(k).second) continue;
        if (estimated_jaccard(sig, kept_signatures[k]) >= options.jaccard_threshold) {
          duplicate = true;
          break;
        }
      }
    }
    if (duplicate) continue;
    const std::size_t index = kept_signatures.size();
    for (std::size_t band = 0; band < banding.bands; ++band) buckets[band_key(sig, band)].push_back(index);
    kept_signatures.push_back(sig);
    result.kept.push_back(d);
  }
  result.report.output = result.kept.size();
  result.report.removed = docs.size() - result.kept.size();
  return result;
}

}  // namespace tokforge::corpus
