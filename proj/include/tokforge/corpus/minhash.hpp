#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace tokforge::corpus {

/// Hashes of the distinct character k-shingles of the normalized text. Texts
/// shorter than k contribute the whole text as their only shingle; an empty
/// text has none.
[[nodiscard]] std::vector<std::uint64_t> shingle_hashes(std::string_view text, std::size_t shingle_size);

/// MinHash signatures under `num_hashes` universal hash functions
/// h(x) = (a*x + b) mod (2^61 - 1), with (a, b) drawn from the seed.
class MinHasher {
 public:
  MinHasher(std::size_t num_hashes, std::uint64_t seed);

  [[nodiscard]] std::vector<std::uint64_t> signature(const std::vector<std::uint64_t>& shingles) const;
  [[nodiscard]] std::size_t num_hashes() const noexcept { return a_.size(); }

 private:
  std::vector<std::uint64_t> a_;
  std::vector<std::uint64_t> b_;
};

/// Fraction of positions where the two signatures agree.
[[nodiscard]] double estimated_jaccard(const std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& y);

/// LSH banding: `bands` groups of `rows` signature values.
struct Banding {
  std::size_t bands = 0;
  std::size_t rows = 0;
};

/// Picks the most selective banding whose chance of flagging a pair with
/// Jaccard (threshold - 0.1) as a candidate is still at least 99.5%.
[[nodiscard]] Banding choose_banding(std::size_t num_hashes, double threshold);

}  // namespace tokforge::corpus
