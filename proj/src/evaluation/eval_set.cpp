#include "tokforge/evaluation/eval_set.hpp"

#include <unordered_set>

#include <fmt/format.h>

#include "tokforge/common/error.hpp"

namespace tokforge::evaluation {

std::string_view to_string(Category c) noexcept {
  switch (c) {
    case Category::others: return "others";
    case Category::rewrite: return "rewrite";
    case Category::classification: return "classification";
    case Category::generation: return "generation";
    case Category::summarization: return "summarization";
    case Category::extract: return "extract";
    case Category::open_qa: return "open_qa";
    case Category::brainstorming: return "brainstorming";
    case Category::closed_qa: return "closed_qa";
  }
  return "others";
}

Category category_from_string(std::string_view name) {
  for (Category c : kCategories) {
    if (to_string(c) == name) return c;
  }
  throw Error(ErrorKind::validation, fmt::format("unknown category '{}'", name));
}

Category reclassify(std::string_view name) {
  if (name == "math" || name == "code") return Category::others;
  return category_from_string(name);
}

EvalSample make_sample(std::string id, std::string instruction, std::string_view category, std::optional<std::string> gold) {
  EvalSample s{std::move(id), std::move(instruction), reclassify(category), std::move(gold)};
  if (!uses_gold(s.category)) s.gold.reset();
  return s;
}

EvalSample eval_sample_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("id") || !j.contains("instruction") || !j.contains("category")) {
    throw Error(ErrorKind::validation, "eval sample needs 'id', 'instruction' and 'category'");
  }
  std::optional<std::string> gold;
  if (j.contains("gold") && !j["gold"].is_null()) gold = j["gold"].get<std::string>();
  return make_sample(j["id"].get<std::string>(), j["instruction"].get<std::string>(), j["category"].get<std::string>(),
                     std::move(gold));
}

Json to_json(const EvalSample& s) {
  Json j{{"id", s.id}, {"instruction", s.instruction}, {"category", to_string(s.category)}};
  if (s.gold) j["gold"] = *s.gold;
  return j;
}

std::vector<EvalSample> load_eval_set(const std::filesystem::path& path) {
  std::vector<EvalSample> out;
  std::unordered_set<std::string> ids;
  for (const Json& j : read_jsonl(path)) {
    EvalSample s = eval_sample_from_json(j);
    if (!ids.insert(s.id).second) throw Error(ErrorKind::validation, fmt::format("duplicate sample id '{}'", s.id));
    out.push_back(std::move(s));
  }
  return out;
}

void save_eval_set(const std::filesystem::path& path, const std::vector<EvalSample>& samples) {
  std::vector<Json> records;
  for (const EvalSample& s : samples) records.push_back(to_json(s));
  write_jsonl(path, records);
}

std::vector<EvalSample> dedup_evalset(const std::vector<EvalSample>& samples, const corpus::SemanticDedupOptions& options) {
  std::vector<corpus::Document> docs;
  docs.reserve(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    docs.push_back({std::to_string(i), samples[i].instruction, Json::object(), Language::other});
  }
  std::vector<EvalSample> out;
  for (const corpus::Document& d : corpus::semantic_dedup(docs, options).kept) out.push_back(samples[std::stoul(d.id)]);
  return out;
}

}  // namespace tokforge::evaluation
