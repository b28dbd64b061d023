#pragma once

// Reference BPE trainer for tests: recounts every pair from scratch after
// each merge. Quadratic, obviously correct, and shares no code with the
// incremental trainer.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

struct NaiveBpe {
  std::vector<std::string> vocab;
  std::vector<std::pair<std::string, std::string>> merges;
};

inline NaiveBpe naive_bpe(const std::vector<std::string>& lines, std::size_t target, bool byte_fallback,
                          std::uint64_t min_frequency = 2) {
  NaiveBpe out;
  std::set<unsigned char> alphabet;
  if (byte_fallback) {
    for (int b = 0; b < 256; ++b) alphabet.insert(static_cast<unsigned char>(b));
  } else {
    for (const auto& l : lines) alphabet.insert(l.begin(), l.end());
  }
  std::set<std::string> known;
  for (unsigned char b : alphabet) {
    out.vocab.emplace_back(1, static_cast<char>(b));
    known.insert(out.vocab.back());
  }

  std::vector<std::vector<std::string>> seqs;
  for (const auto& l : lines) {
    std::vector<std::string> s;
    for (char c : l) s.emplace_back(1, c);
    seqs.push_back(std::move(s));
  }

  while (out.vocab.size() < target) {
    std::map<std::pair<std::string, std::string>, std::uint64_t> counts;
    for (const auto& s : seqs) {
      for (std::size_t i = 0; i + 1 < s.size(); ++i) ++counts[{s[i], s[i + 1]}];
    }
    const std::pair<std::string, std::string>* best = nullptr;
    std::uint64_t best_count = 0;
    for (const auto& [pair, count] : counts) {
      if (known.count(pair.first + pair.second)) continue;
      if (best == nullptr || count > best_count) {
        best = &pair;
        best_count = count;
        continue;
      }
      if (count < best_count) continue;
      const std::string cand = pair.first + pair.second;
      const std::string cur = best->first + best->second;
      if (cand < cur || (cand == cur && pair.first < best->first)) best = &pair;
    }
    if (best == nullptr || best_count < std::max<std::uint64_t>(1, min_frequency)) break;

    const auto [l, r] = *best;
    out.merges.emplace_back(l, r);
    out.vocab.push_back(l + r);
    known.insert(l + r);
    for (auto& s : seqs) {
      std::vector<std::string> merged;
      for (std::size_t i = 0; i < s.size(); ++i) {
        if (i + 1 < s.size() && s[i] == l && s[i + 1] == r) {
          merged.push_back(l + r);
          ++i;
        } else {
          merged.push_back(s[i]);
        }
      }
      s = std::move(merged);
    }
  }
  return out;
}

}  // namespace oracle
