#include "tokforge/corpus/diversity.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "tokforge/common/error.hpp"
#include "tokforge/common/text.hpp"

namespace tokforge::corpus {

DiversityReport diversity_report(const std::vector<Document>& docs) {
  std::map<std::string, std::size_t> counts;
  DiversityReport r;
  for (const Document& d : docs) {
    for (std::string& t : text::word_tokens(text::nfc(d.text))) {
      ++counts[std::move(t)];
      ++r.total_tokens;
    }
  }
  if (r.total_tokens == 0) throw Error(ErrorKind::input, "diversity report needs at least one token");

  r.frequencies.assign(counts.begin(), counts.end());
  std::stable_sort(r.frequencies.begin(), r.frequencies.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  r.distinct_tokens = r.frequencies.size();

  const double total = static_cast<double>(r.total_tokens);
  for (const auto& [token, c] : r.frequencies) {
    const double p = static_cast<double>(c) / total;
    r.entropy_bits -= p * std::log2(p);
  }
  if (r.entropy_bits < 0.0) r.entropy_bits = 0.0;

  const auto top = static_cast<std::size_t>(std::ceil(static_cast<double>(r.distinct_tokens) * 0.01));
  std::size_t top_mass = 0;
  for (std::size_t i = 0; i < top; ++i) top_mass += r.frequencies[i].second;
  r.top1pct_mass = static_cast<double>(top_mass) / total;
  r.type_token_ratio = static_cast<double>(r.distinct_tokens) / total;
  return r;
}

Json to_json(const DiversityReport& report, std::size_t max_rows) {
  Json table = Json::array();
  for (std::size_t i = 0; i < std::min(max_rows, report.frequencies.size()); ++i) {
    table.push_back(Json::array({report.frequencies[i].first, report.frequencies[i].second}));
  }
  return Json{{"total_tokens", report.total_tokens},
              {"distinct_tokens", report.distinct_tokens},
              {"entropy_bits", report.entropy_bits},
              {"top1pct_mass", report.top1pct_mass},
              {"type_token_ratio", report.type_token_ratio},
              {"frequencies", std::move(table)}};
}

}  // namespace tokforge::corpus
