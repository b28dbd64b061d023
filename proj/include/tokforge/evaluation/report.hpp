#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tokforge/evaluation/eval_set.hpp"
#include "tokforge/evaluation/judge.hpp"

namespace tokforge::evaluation {

struct ScoreReport {
  std::string model;
  std::array<std::optional<double>, kCategoryCount> means{};  // empty for categories without samples
  std::array<std::size_t, kCategoryCount> counts{};
  double macro_ave = 0.0;            // over categories with samples
  double macro_ave_wo_others = 0.0;  // same, without others
  std::vector<std::string> warnings;
};

/// Unweighted means over the categories that have a value, in column order.
[[nodiscard]] double macro_average(const std::array<std::optional<double>, kCategoryCount>& means, bool include_others);

/// One report per model, sorted by model name. Category means are taken over
/// sorted scores, so the result does not depend on verdict order. Throws
/// Error(consistency) for a verdict naming an unknown sample or a repeated
/// (sample, model) pair.
[[nodiscard]] std::vector<ScoreReport> aggregate(const std::vector<JudgeVerdict>& verdicts,
                                                 const std::vector<EvalSample>& eval_set);

/// Columns: model, the nine categories, score, score_w/o_others, then counts.
[[nodiscard]] Json to_json(const ScoreReport& report);
[[nodiscard]] Json to_json(const std::vector<ScoreReport>& reports);

}  // namespace tokforge::evaluation
