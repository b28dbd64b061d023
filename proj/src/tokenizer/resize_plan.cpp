#include "tokforge/tokenizer/resize_plan.hpp"

#include <fmt/format.h>

#include "tokforge/common/error.hpp"
#include "tokforge/common/escape.hpp"

namespace tokforge::tokenizer {

std::string_view to_string(InitRule rule) noexcept {
  return rule == InitRule::mean_of_copied ? "mean_of_copied" : "zero";
}

InitRule init_rule_from_string(std::string_view name) {
  if (name == "mean_of_copied" || name == "mean") return InitRule::mean_of_copied;
  if (name == "zero") return InitRule::zero;
  throw Error(ErrorKind::config, fmt::format("unknown init rule '{}'", name));
}

ResizePlan resize_plan(const Vocabulary& base, const Vocabulary& merged, std::size_t embedding_dim, InitRule rule) {
  if (embedding_dim == 0) throw Error(ErrorKind::parameter, "embedding dimension must be positive");
  ResizePlan plan;
  plan.old_size = base.size();
  plan.new_size = merged.size();
  plan.embedding_dim = embedding_dim;
  plan.copied_rows.reserve(base.size());
  for (std::size_t id = 0; id < base.size(); ++id) {
    const std::string& token = base.token(static_cast<TokenId>(id));
    const auto found = merged.find(token);
    if (!found) {
      throw Error(ErrorKind::consistency, fmt::format("base token {} '{}' is missing from the merged vocabulary", id, escape_bytes(token)));
    }
    if (*found != id) {
      throw Error(ErrorKind::consistency, fmt::format("base token '{}' moved from id {} to {}", escape_bytes(token), id, *found));
    }
    plan.copied_rows.emplace_back(static_cast<TokenId>(id), *found);
  }
  for (std::size_t id = base.size(); id < merged.size(); ++id) plan.new_rows.emplace_back(static_cast<TokenId>(id), rule);
  return plan;
}

Json to_json(const ResizePlan& plan) {
  Json j;
  j["old_size"] = plan.old_size;
  j["new_size"] = plan.new_size;
  j["embedding_dim"] = plan.embedding_dim;
  j["trainable_scope"] = plan.trainable_scope;
  Json copied = Json::array();
  for (const auto& [from, to] : plan.copied_rows) copied.push_back(Json::array({from, to}));
  j["copied_rows"] = std::move(copied);
  Json fresh = Json::array();
  for (const auto& [id, rule] : plan.new_rows) fresh.push_back(Json::array({id, to_string(rule)}));
  j["new_rows"] = std::move(fresh);
  return j;
}

}  // namespace tokforge::tokenizer
