#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tokforge/common/io.hpp"
#include "tokforge/corpus/dedup.hpp"
#include "tokforge/corpus/document.hpp"
#include "tokforge/corpus/ngram_lm.hpp"
#include "tokforge/corpus/ppl_filter.hpp"

namespace tokforge::corpus {

/// Stage accounting for a cleaning run. Invariants: input = output + removed
/// per stage, and each stage starts from the previous stage's output.
struct CleaningReport {
  std::vector<StageReport> stages;
  std::size_t input = 0;
  std::size_t output = 0;

  void append(const StageReport& stage);
  /// Throws Error(validation) if an invariant does not hold.
  void validate() const;
};

[[nodiscard]] Json to_json(const CleaningReport& report);
/// Parses and validates.
[[nodiscard]] CleaningReport cleaning_report_from_json(const Json& j);

inline constexpr std::string_view kExactDedup = "exact_dedup";
inline constexpr std::string_view kSemanticDedup = "semantic_dedup";
inline constexpr std::string_view kPplFilter = "ppl_filter";

struct PipelineConfig {
  std::vector<std::string> stages;
  SemanticDedupOptions semantic;
  PplCutoff cutoff = PercentileCutoff{90.0};
  NgramOptions lm;
};

/// Reads {"stages": [...], "semantic_dedup": {...}, "ppl_filter": {...}, "lm": {...}}.
/// Throws Error(config) on unknown stages or fields.
[[nodiscard]] PipelineConfig pipeline_config_from_json(const Json& j);
[[nodiscard]] Json to_json(const PipelineConfig& config);

struct PipelineResult {
  std::vector<Document> kept;
  CleaningReport report;
};

/// Applies the configured stages in order. `lm` is required when the stage
/// list names ppl_filter.
[[nodiscard]] PipelineResult clean_pipeline(const std::vector<Document>& docs, const PipelineConfig& config,
                                            const NgramLM* lm = nullptr);

}  // namespace tokforge::corpus
