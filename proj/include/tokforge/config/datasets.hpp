#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tokforge/common/io.hpp"
#include "tokforge/common/language.hpp"

namespace tokforge::config {

/// A training dataset. Language-specific versions of a family are named
/// "<family>-<lang>", e.g. alpaca-4-zh.
struct DatasetInfo {
  std::string name;
  std::string family;
  std::optional<Language> language;  // empty for multilingual sets such as sharegpt
  std::string description;
  std::size_t samples = 0;
};

class DatasetRegistry {
 public:
  /// Registry preloaded with the instruction datasets used in the experiments.
  [[nodiscard]] static DatasetRegistry builtin();

  /// Throws Error(config) if the name is already registered.
  void add(DatasetInfo info);
  [[nodiscard]] const DatasetInfo* find(std::string_view name) const;
  [[nodiscard]] const std::vector<DatasetInfo>& all() const noexcept { return datasets_; }

  /// zh(d) / en(d): the Chinese or English version of family d.
  /// Throws Error(config) when that version is not registered.
  [[nodiscard]] const DatasetInfo& version(Language lang, std::string_view family) const;

  /// Expands mixture expressions such as "zh(alpaca-3.5&4)+sharegpt".
  /// Inside zh()/en(), "&" separates alternatives; an alternative without a
  /// dash reuses the prefix of the first ("alpaca-3.5&4" is alpaca-3.5 and
  /// alpaca-4). Duplicates are removed, first occurrence kept.
  [[nodiscard]] std::vector<const DatasetInfo*> resolve_mixture(std::string_view expression) const;

 private:
  std::vector<DatasetInfo> datasets_;
};

[[nodiscard]] Json to_json(const DatasetInfo& info);

}  // namespace tokforge::config
