#include "tokforge/corpus/ppl_filter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "tokforge/common/error.hpp"

namespace tokforge::corpus {

PplFilterResult ppl_filter(const std::vector<Document>& docs, const NgramLM& lm, const PplCutoff& cutoff) {
  if (const auto* p = std::get_if<PercentileCutoff>(&cutoff); p && !(p->percentile > 0.0 && p->percentile < 100.0)) {
    throw Error(ErrorKind::parameter, fmt::format("percentile {} outside (0, 100)", p->percentile));
  }
  PplFilterResult result;
  result.filtered.report.stage = "ppl_filter";
  result.filtered.report.input = docs.size();
  result.perplexities.resize(docs.size(), std::numeric_limits<double>::quiet_NaN());
  std::vector<std::size_t> scored;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    try {
      result.perplexities[i] = lm.perplexity(docs[i].text);
      scored.push_back(i);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::undefined_ppl) throw;
    }
  }

  std::vector<bool> keep(docs.size(), false);
  if (const auto* abs = std::get_if<AbsoluteThreshold>(&cutoff)) {
    for (std::size_t i : scored) keep[i] = result.perplexities[i] <= abs->max_ppl;
  } else {
    const double pct = std::get<PercentileCutoff>(cutoff).percentile;
    const auto quota = static_cast<std::size_t>(std::ceil(static_cast<double>(docs.size()) * pct / 100.0 - 1e-9));
    std::stable_sort(scored.begin(), scored.end(),
                     [&](std::size_t a, std::size_t b) { return result.perplexities[a] < result.perplexities[b]; });
    for (std::size_t r = 0; r < std::min(quota, scored.size()); ++r) keep[scored[r]] = true;
  }
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (keep[i]) result.filtered.kept.push_back(docs[i]);
  }
  result.filtered.report.output = result.filtered.kept.size();
  result.filtered.report.removed = docs.size() - result.filtered.kept.size();
  return result;
}

}  // namespace tokforge::corpus
