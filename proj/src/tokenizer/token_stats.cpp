#include "tokforge/tokenizer/token_stats.hpp"

#include "tokforge/common/error.hpp"
#include "tokforge/common/parallel.hpp"

namespace tokforge::tokenizer {

double reduction_ratio(double base_mean, double extended_mean) {
  if (base_mean <= 0.0) throw Error(ErrorKind::parameter, "base mean must be positive");
  return 1.0 - extended_mean / base_mean;
}

TokenizerStatsReport tok_stats(std::span<const std::string> lines, std::span<const NamedTokenizer> tokenizers,
                               std::size_t threads) {
  if (tokenizers.empty()) throw Error(ErrorKind::parameter, "at least one tokenizer is required");
  std::vector<std::string_view> kept;
  for (const std::string& line : lines) {
    if (!line.empty()) kept.push_back(line);
  }
  if (kept.empty()) throw Error(ErrorKind::input, "corpus has no non-empty lines");

  // counts[t][i] = tokens of line i under tokenizer t
  std::vector<std::vector<std::size_t>> counts(tokenizers.size(), std::vector<std::size_t>(kept.size()));
  parallel_for(kept.size(), threads, [&](std::size_t i) {
    for (std::size_t t = 0; t < tokenizers.size(); ++t) counts[t][i] = tokenizers[t].tokenizer->count_tokens(kept[i]);
  });

  TokenizerStatsReport report;
  for (std::size_t t = 0; t < tokenizers.size(); ++t) {
    TokenizerStats s;
    s.name = tokenizers[t].name;
    s.total_lines = kept.size();
    for (std::size_t c : counts[t]) s.total_tokens += c;
    s.mean_tokens_per_line = static_cast<double>(s.total_tokens) / static_cast<double>(s.total_lines);
    report.tokenizers.push_back(std::move(s));
  }
  if (tokenizers.size() == 2) {
    report.reduction_ratio = reduction_ratio(report.tokenizers[0].mean_tokens_per_line, report.tokenizers[1].mean_tokens_per_line);
    std::size_t worse = 0;
    for (std::size_t i = 0; i < kept.size(); ++i) worse += counts[1][i] > counts[0][i] ? 1 : 0;
    report.lines_with_more_tokens = worse;
  }
  return report;
}

Json to_json(const TokenizerStatsReport& report) {
  Json j;
  Json list = Json::array();
  for (const auto& s : report.tokenizers) {
    list.push_back({{"name", s.name},
                    {"total_lines", s.total_lines},
                    {"total_tokens", s.total_tokens},
                    {"mean_tokens_per_line", s.mean_tokens_per_line}});
  }
  j["tokenizers"] = std::move(list);
  if (report.reduction_ratio) j["reduction_ratio"] = *report.reduction_ratio;
  if (report.lines_with_more_tokens) j["lines_with_more_tokens"] = *report.lines_with_more_tokens;
  return j;
}

}  // namespace tokforge::tokenizer
