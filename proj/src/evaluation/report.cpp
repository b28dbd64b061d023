#include "tokforge/evaluation/report.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include <fmt/format.h>

namespace tokforge::evaluation {

double macro_average(const std::array<std::optional<double>, kCategoryCount>& means, bool include_others) {
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    if (!include_others && kCategories[c] == Category::others) continue;
    if (means[c]) {
      sum += *means[c];
      ++n;
    }
  }
  return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

std::vector<ScoreReport> aggregate(const std::vector<JudgeVerdict>& verdicts, const std::vector<EvalSample>& eval_set) {
  std::unordered_map<std::string_view, Category> category_of;
  for (const EvalSample& s : eval_set) category_of.emplace(s.id, s.category);

  std::map<std::string, std::array<std::vector<double>, kCategoryCount>> scores;
  std::set<std::pair<std::string_view, std::string_view>> seen;
  for (const JudgeVerdict& v : verdicts) {
    const auto it = category_of.find(v.sample_id);
    if (it == category_of.end()) throw Error(ErrorKind::consistency, fmt::format("verdict for unknown sample '{}'", v.sample_id));
    if (!seen.emplace(v.sample_id, v.model).second) {
      throw Error(ErrorKind::consistency, fmt::format("sample '{}' judged twice for model '{}'", v.sample_id, v.model));
    }
    scores[v.model][static_cast<std::size_t>(it->second)].push_back(v.score);
  }

  std::vector<ScoreReport> reports;
  for (auto& [model, per_category] : scores) {
    ScoreReport r;
    r.model = model;
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
      auto& xs = per_category[c];
      r.counts[c] = xs.size();
      if (xs.empty()) {
        r.warnings.push_back(fmt::format("{}: no scored samples in category {}; left out of the macro averages", model,
                                         to_string(kCategories[c])));
        continue;
      }
      std::sort(xs.begin(), xs.end());
      double sum = 0.0;
      for (double x : xs) sum += x;
      r.means[c] = sum / static_cast<double>(xs.size());
    }
    r.macro_ave = macro_average(r.means, true);
    r.macro_ave_wo_others = macro_average(r.means, false);
    reports.push_back(std::move(r));
  }
  return reports;
}

Json to_json(const ScoreReport& report) {
  Json j{{"model", report.model}};
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    const std::string key(to_string(kCategories[c]));
    j[key] = report.means[c] ? Json(*report.means[c]) : Json(nullptr);
  }
  j["score"] = report.macro_ave;
  j["score_w/o_others"] = report.macro_ave_wo_others;
  Json counts = Json::object();
  for (std::size_t c = 0; c < kCategoryCount; ++c) counts[std::string(to_string(kCategories[c]))] = report.counts[c];
  j["counts"] = std::move(counts);
  j["warnings"] = report.warnings;
  return j;
}

Json to_json(const std::vector<ScoreReport>& reports) {
  Json rows = Json::array();
  for (const ScoreReport& r : reports) rows.push_back(to_json(r));
  return Json{{"reports", std::move(rows)}};
}

}  // namespace tokforge::evaluation
