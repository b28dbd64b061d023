#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tokforge/common/io.hpp"

namespace tokforge::config {

/// Fine-tuning hyper-parameters; defaults are the published settings.
struct TrainingConfig {
  std::string precision = "bf16";
  int epochs = 3;
  int batch_size = 32;
  double learning_rate = 5e-6;
  double weight_decay = 0.0;
  double warmup_ratio = 0.03;
  std::string lr_scheduler = "cosine";
  int max_length = 2048;

  bool operator==(const TrainingConfig&) const = default;
};

[[nodiscard]] Json to_json(const TrainingConfig& cfg);

/// Applies a JSON object of overrides. "lr" is accepted for learning_rate.
/// Throws Error(config) for unknown fields or values of the wrong type.
[[nodiscard]] TrainingConfig apply_overrides(TrainingConfig cfg, const Json& overrides);

/// Parses "key=value" strings into an overrides object. Values are read as
/// JSON when possible, otherwise as strings.
[[nodiscard]] Json parse_overrides(const std::vector<std::string>& assignments);

}  // namespace tokforge::config
