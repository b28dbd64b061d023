#include "tokforge/config/training_config.hpp"

#include <fmt/format.h>

#include "tokforge/common/error.hpp"

namespace tokforge::config {

Json to_json(const TrainingConfig& cfg) {
  return Json{{"precision", cfg.precision},         {"epochs", cfg.epochs},
              {"batch_size", cfg.batch_size},       {"learning_rate", cfg.learning_rate},
              {"weight_decay", cfg.weight_decay},   {"warmup_ratio", cfg.warmup_ratio},
              {"lr_scheduler", cfg.lr_scheduler},   {"max_length", cfg.max_length}};
}

namespace {

template <typename T>
T typed(const std::string& key, const Json& value) {
  const bool ok = [&] {
    if constexpr (std::is_same_v<T, std::string>) return value.is_string();
    else if constexpr (std::is_integral_v<T>) return value.is_number_integer();
    else return value.is_number();
  }();
  if (!ok) throw Error(ErrorKind::config, fmt::format("training config field '{}' has the wrong type: {}", key, value.dump()));
  return value.get<T>();
}

}  // namespace

TrainingConfig apply_overrides(TrainingConfig cfg, const Json& overrides) {
  if (!overrides.is_object()) throw Error(ErrorKind::config, "training config overrides must be an object");
  for (auto it = overrides.begin(); it != overrides.end(); ++it) {
    const std::string key = it.key() == "lr" ? "learning_rate" : it.key();
    const Json& v = it.value();
    if (key == "precision") cfg.precision = typed<std::string>(key, v);
    else if (key == "epochs") cfg.epochs = typed<int>(key, v);
    else if (key == "batch_size") cfg.batch_size = typed<int>(key, v);
    else if (key == "learning_rate") cfg.learning_rate = typed<double>(key, v);
    else if (key == "weight_decay") cfg.weight_decay = typed<double>(key, v);
    else if (key == "warmup_ratio") cfg.warmup_ratio = typed<double>(key, v);
    else if (key == "lr_scheduler") cfg.lr_scheduler = typed<std::string>(key, v);
    else if (key == "max_length") cfg.max_length = typed<int>(key, v);
    else throw Error(ErrorKind::config, fmt::format("unknown training config field '{}'", it.key()));
  }
  return cfg;
}

Json parse_overrides(const std::vector<std::string>& assignments) {
  Json out = Json::object();
  for (const std::string& a : assignments) {
    const auto eq = a.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(ErrorKind::config, fmt::format("override '{}' is not key=value", a));
    const std::string value = a.substr(eq + 1);
    Json parsed = Json::parse(value, nullptr, false);
    out[a.substr(0, eq)] = parsed.is_discarded() ? Json(value) : std::move(parsed);
  }
  return out;
}

}  // namespace tokforge::config
