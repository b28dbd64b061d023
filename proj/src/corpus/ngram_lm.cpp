#include "tokforge/corpus/ngram_lm.hpp"

#include <cmath>
#include <set>

#include <fmt/format.h>

#include "tokforge/common/error.hpp"
#include "tokforge/common/text.hpp"

namespace tokforge::corpus {

std::string_view to_string(Smoothing s) noexcept { return s == Smoothing::add_k ? "add_k" : "interpolated"; }

Smoothing smoothing_from_string(std::string_view name) {
  if (name == "add_k" || name == "add-k") return Smoothing::add_k;
  if (name == "interpolated" || name == "kneser_ney") return Smoothing::interpolated;
  throw Error(ErrorKind::config, fmt::format("unknown smoothing '{}'", name));
}

std::string NgramLM::context_key(std::span<const Id> ids) {
  return {reinterpret_cast<const char*>(ids.data()), ids.size() * sizeof(Id)};
}

NgramLM NgramLM::train(std::span<const std::string> documents, const NgramOptions& options) {
  std::vector<std::vector<std::string>> tokens;
  tokens.reserve(documents.size());
  for (const std::string& d : documents) tokens.push_back(text::word_tokens(text::nfc(d)));
  return train_tokens(tokens, options);
}

NgramLM NgramLM::train_tokens(std::span<const std::vector<std::string>> documents, const NgramOptions& options) {
  if (options.order < 1) throw Error(ErrorKind::parameter, "n-gram order must be at least 1");
  if (options.smoothing == Smoothing::add_k && !(options.add_k > 0.0)) throw Error(ErrorKind::parameter, "add-k needs k > 0");
  if (options.smoothing == Smoothing::interpolated && !(options.discount > 0.0 && options.discount <= 1.0)) {
    throw Error(ErrorKind::parameter, "discount must lie in (0, 1]");
  }

  std::unordered_map<std::string, std::size_t> freq;
  std::size_t total_tokens = 0;
  for (const auto& doc : documents) {
    for (const std::string& t : doc) ++freq[t];
    total_tokens += doc.size();
  }
  if (total_tokens == 0) throw Error(ErrorKind::input, "n-gram training corpus has no tokens");

  NgramLM lm;
  lm.options_ = options;
  lm.types_ = {std::string(kBos), std::string(kEos), std::string(kUnk)};
  std::set<std::string> kept;
  for (const auto& [t, c] : freq) {
    if (c >= options.unk_min_count && t != kBos && t != kEos && t != kUnk) kept.insert(t);
  }
  for (const std::string& t : kept) lm.types_.push_back(t);
  for (Id i = 0; i < lm.types_.size(); ++i) lm.ids_.emplace(lm.types_[i], i);

  const auto n = static_cast<std::size_t>(options.order);
  lm.tables_.resize(n);
  // Distinct m-grams per order, used for continuation counts.
  std::vector<std::set<std::string>> distinct(n + 1);
  for (const auto& doc : documents) {
    std::vector<Id> seq(n - 1, kBosId);
    for (const std::string& t : doc) seq.push_back(lm.lookup(t));
    seq.push_back(kEosId);
    for (std::size_t i = n - 1; i < seq.size(); ++i) {
      const std::span<const Id> window(seq.data() + i + 1 - n, n);
      auto& top = lm.tables_[n - 1][context_key(window.first(n - 1))];
      ++top.total;
      ++top.next[seq[i]];
      for (std::size_t m = 2; m <= n; ++m) distinct[m].insert(context_key(window.last(m)));
    }
  }
  if (options.smoothing == Smoothing::interpolated) {
    // Order k < n counts how many distinct left neighbours precede each k-gram.
    for (std::size_t k = n - 1; k >= 1; --k) {
      for (const std::string& gram : distinct[k + 1]) {
        const auto* ids = reinterpret_cast<const Id*>(gram.data());
        const std::span<const Id> suffix(ids + 1, k);
        auto& stats = lm.tables_[k - 1][context_key(suffix.first(k - 1))];
        ++stats.total;
        ++stats.next[suffix.back()];
      }
    }
  }
  return lm;
}

NgramLM::Id NgramLM::lookup(std::string_view token) const {
  const auto it = ids_.find(std::string(token));
  if (it == ids_.end() || it->second == kBosId) return kUnkId;
  return it->second;
}

std::vector<std::string> NgramLM::vocabulary() const {
  std::vector<std::string> v;
  for (Id i = 3; i < types_.size(); ++i) v.push_back(types_[i]);
  v.emplace_back(kEos);
  v.emplace_back(kUnk);
  return v;
}

long double NgramLM::interpolated(std::span<const Id> history, Id word, int order) const {
  if (order == 0) return 1.0L / static_cast<long double>(vocab_size());
  const auto k = static_cast<std::size_t>(order);
  const auto context = history.last(k - 1);
  const long double lower = interpolated(history, word, order - 1);
  const auto& table = tables_[k - 1];
  const auto it = table.find(context_key(context));
  if (it == table.end() || it->second.total == 0) return lower;
  const ContextStats& s = it->second;
  const auto found = s.next.find(word);
  const long double c = found == s.next.end() ? 0.0L : static_cast<long double>(found->second);
  const long double total = static_cast<long double>(s.total);
  const long double d = options_.discount;
  return std::max(c - d, 0.0L) / total + d * static_cast<long double>(s.next.size()) / total * lower;
}

long double NgramLM::prob_ids(std::span<const Id> history, Id word) const {
  const auto n = static_cast<std::size_t>(options_.order);
  if (options_.smoothing == Smoothing::interpolated) return interpolated(history, word, options_.order);
  const long double k = options_.add_k;
  const long double v = static_cast<long double>(vocab_size());
  const auto& table = tables_[n - 1];
  const auto it = table.find(context_key(history.last(n - 1)));
  if (it == table.end()) return 1.0L / v;
  const auto found = it->second.next.find(word);
  const long double c = found == it->second.next.end() ? 0.0L : static_cast<long double>(found->second);
  return (c + k) / (static_cast<long double>(it->second.total) + k * v);
}

double NgramLM::prob(std::span<const std::string> history, std::string_view word) const {
  const auto n = static_cast<std::size_t>(options_.order);
  std::vector<Id> h(n - 1, kBosId);
  const std::size_t take = std::min(history.size(), n - 1);
  for (std::size_t i = 0; i < take; ++i) {
    const std::string& t = history[history.size() - take + i];
    h[n - 1 - take + i] = t == kBos ? kBosId : lookup(t);
  }
  const Id w = word == kEos ? kEosId : lookup(word);
  return static_cast<double>(prob_ids(h, w));
}

double NgramLM::perplexity_tokens(std::span<const std::string> tokens) const {
  if (tokens.empty()) throw Error(ErrorKind::undefined_ppl, "perplexity is undefined for an empty document");
  const auto n = static_cast<std::size_t>(options_.order);
  std::vector<Id> seq(n - 1, kBosId);
  for (const std::string& t : tokens) seq.push_back(lookup(t));
  seq.push_back(kEosId);
  // Extended precision so the result is rounded to double only once.
  long double log_sum = 0.0L;
  for (std::size_t i = n - 1; i < seq.size(); ++i) {
    const std::span<const Id> history(seq.data() + i + 1 - n, n - 1);
    log_sum += std::log(prob_ids(history, seq[i]));
  }
  const auto count = static_cast<long double>(seq.size() - (n - 1));
  return static_cast<double>(std::exp(-log_sum / count));
}

double NgramLM::perplexity(std::string_view document) const {
  const auto tokens = text::word_tokens(text::nfc(document));
  return perplexity_tokens(tokens);
}

}  // namespace tokforge::corpus
