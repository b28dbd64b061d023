#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tokforge/common/io.hpp"
#include "tokforge/corpus/dedup.hpp"

namespace tokforge::evaluation {

/// Report column order.
enum class Category {
  others,
  rewrite,
  classification,
  generation,
  summarization,
  extract,
  open_qa,
  brainstorming,
  closed_qa,
};

inline constexpr std::size_t kCategoryCount = 9;
inline constexpr std::array<Category, kCategoryCount> kCategories = {
    Category::others,        Category::rewrite, Category::classification, Category::generation, Category::summarization,
    Category::extract,       Category::open_qa, Category::brainstorming,  Category::closed_qa};

[[nodiscard]] std::string_view to_string(Category c) noexcept;

/// Canonical names only. Throws Error(validation) otherwise.
[[nodiscard]] Category category_from_string(std::string_view name);

/// Like category_from_string, but the legacy math and code labels map to others.
[[nodiscard]] Category reclassify(std::string_view name);

/// rewrite, generation and brainstorming are judged without a reference answer.
[[nodiscard]] constexpr bool uses_gold(Category c) noexcept {
  return c != Category::rewrite && c != Category::generation && c != Category::brainstorming;
}

struct EvalSample {
  std::string id;
  std::string instruction;
  Category category = Category::others;
  std::optional<std::string> gold;
};

/// Builds a sample from a raw category label: reclassifies it and drops any
/// gold answer for categories judged without one.
[[nodiscard]] EvalSample make_sample(std::string id, std::string instruction, std::string_view category,
                                     std::optional<std::string> gold);

/// {id, instruction, category, gold?}; goes through make_sample.
[[nodiscard]] EvalSample eval_sample_from_json(const Json& j);
[[nodiscard]] Json to_json(const EvalSample& s);

/// Throws Error(validation) on duplicate ids.
[[nodiscard]] std::vector<EvalSample> load_eval_set(const std::filesystem::path& path);
void save_eval_set(const std::filesystem::path& path, const std::vector<EvalSample>& samples);

/// Near-duplicate removal over instruction texts, first occurrence kept.
[[nodiscard]] std::vector<EvalSample> dedup_evalset(const std::vector<EvalSample>& samples,
                                                    const corpus::SemanticDedupOptions& options = {});

}  // namespace tokforge::evaluation
