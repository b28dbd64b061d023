#include "tokforge/corpus/minhash.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "tokforge/common/hash.hpp"
#include "tokforge/common/text.hpp"

namespace tokforge::corpus {

namespace {

constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

std::uint64_t mod_mersenne(unsigned __int128 x) {
  std::uint64_t r = static_cast<std::uint64_t>(x & kMersenne61) + static_cast<std::uint64_t>(x >> 61);
  r = (r & kMersenne61) + (r >> 61);
  return r >= kMersenne61 ? r - kMersenne61 : r;
}

}  // namespace

std::vector<std::uint64_t> shingle_hashes(std::string_view text, std::size_t shingle_size) {
  const std::u32string cps = text::decode_utf8(text::normalize(text));
  std::vector<std::uint64_t> out;
  if (cps.empty()) return out;
  const std::size_t k = std::max<std::size_t>(1, shingle_size);
  auto hash_span = [](std::u32string_view s) {
    const std::string bytes = text::encode_utf8(s);
    return splitmix64(fnv1a64(bytes));
  };
  if (cps.size() < k) {
    out.push_back(hash_span(cps));
  } else {
    out.reserve(cps.size() - k + 1);
    const std::u32string_view view(cps);
    for (std::size_t i = 0; i + k <= cps.size(); ++i) out.push_back(hash_span(view.substr(i, k)));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MinHasher::MinHasher(std::size_t num_hashes, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> coef_a(1, kMersenne61 - 1);
  std::uniform_int_distribution<std::uint64_t> coef_b(0, kMersenne61 - 1);
  a_.reserve(num_hashes);
  b_.reserve(num_hashes);
  for (std::size_t i = 0; i < num_hashes; ++i) {
    a_.push_back(coef_a(rng));
    b_.push_back(coef_b(rng));
  }
}

std::vector<std::uint64_t> MinHasher::signature(const std::vector<std::uint64_t>& shingles) const {
  std::vector<std::uint64_t> sig(a_.size(), std::numeric_limits<std::uint64_t>::max());
  for (std::uint64_t s : shingles) {
    const std::uint64_t x = mod_mersenne(s);
    for (std::size_t i = 0; i < a_.size(); ++i) {
      const std::uint64_t h = mod_mersenne(static_cast<unsigned __int128>(a_[i]) * x + b_[i]);
      sig[i] = std::min(sig[i], h);
    }
  }
  return sig;
}

double estimated_jaccard(const std::vector<std::uint64_t>& x, const std::vector<std::uint64_t>& y) {
  if (x.empty() || x.size() != y.size()) return 0.0;
  std::size_t same = 0;
  for (std::size_t i = 0; i < x.size(); ++i) same += x[i] == y[i] ? 1 : 0;
  return static_cast<double>(same) / static_cast<double>(x.size());
}

Banding choose_banding(std::size_t num_hashes, double threshold) {
  const double s = std::max(0.05, threshold - 0.1);
  Banding best{num_hashes, 1};
  for (std::size_t rows = 1; rows <= num_hashes; ++rows) {
    const std::size_t bands = num_hashes / rows;
    const double p = 1.0 - std::pow(1.0 - std::pow(s, static_cast<double>(rows)), static_cast<double>(bands));
    if (p >= 0.995) best = {bands, rows};
  }
  return best;
}

}  // namespace tokforge::corpus
