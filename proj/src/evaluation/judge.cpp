#include "tokforge/evaluation/judge.hpp"

#include <cctype>
#include <charconv>
#include <unordered_map>

#include <fmt/format.h>

#include "tokforge/common/parallel.hpp"
#include "tokforge/common/resources.hpp"

namespace tokforge::evaluation {

JudgePrompt build_judge_prompt(const EvalSample& sample, std::string_view response, MissingGoldPolicy policy) {
  JudgePrompt p;
  const std::string_view category = to_string(sample.category);
  if (uses_gold(sample.category) && sample.gold) {
    p.template_name = kJudgeGoldTemplate;
    p.text = render_template(resource(kJudgeGoldTemplate), {{"category", category},
                                                            {"instruction", sample.instruction},
                                                            {"gold", *sample.gold},
                                                            {"response", response}});
    return p;
  }
  if (uses_gold(sample.category)) {
    const std::string msg = fmt::format("sample {} ({}) has no gold answer", sample.id, category);
    if (policy == MissingGoldPolicy::error) throw Error(ErrorKind::validation, msg);
    p.warning = msg + "; judged without reference";
  }
  p.template_name = kJudgeNoGoldTemplate;
  p.text = render_template(resource(kJudgeNoGoldTemplate),
                           {{"category", category}, {"instruction", sample.instruction}, {"response", response}});
  return p;
}

double parse_score(std::string_view reply) {
  const auto is_digit = [](char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; };
  for (std::size_t i = 0; i < reply.size(); ++i) {
    const bool starts_number = is_digit(reply[i]) || (reply[i] == '.' && i + 1 < reply.size() && is_digit(reply[i + 1]));
    if (!starts_number) continue;
    std::size_t end = i;
    while (end < reply.size() && is_digit(reply[end])) ++end;
    if (end + 1 < reply.size() && reply[end] == '.' && is_digit(reply[end + 1])) {
      ++end;
      while (end < reply.size() && is_digit(reply[end])) ++end;
    }
    const std::string number(reply.substr(i, end - i));
    double value = 0.0;
    std::from_chars(number.data(), number.data() + number.size(), value);
    if (i > 0 && reply[i - 1] == '-') value = -value;
    if (value < 0.0 || value > 1.0) {
      throw Error(ErrorKind::scoring_parse, fmt::format("score {} is outside [0, 1]", i > 0 && reply[i - 1] == '-' ? "-" + number : number));
    }
    return value;
  }
  throw Error(ErrorKind::scoring_parse, "reply contains no score");
}

Json to_json(const JudgeParams& params) {
  return Json{{"judge_model", params.judge_model},
              {"temperature", params.temperature},
              {"max_tokens", params.max_tokens},
              {"missing_gold", params.missing_gold == MissingGoldPolicy::warn ? "warn" : "error"}};
}

Json to_json(const JudgeVerdict& v) {
  return Json{{"sample_id", v.sample_id}, {"model", v.model},         {"score", v.score},
              {"raw", v.raw},             {"judge_model", v.judge_model}, {"ts", v.ts},
              {"retries", v.retries}};
}

JudgeVerdict verdict_from_json(const Json& j) {
  try {
    JudgeVerdict v;
    v.sample_id = j.at("sample_id").get<std::string>();
    v.model = j.at("model").get<std::string>();
    v.score = j.at("score").get<double>();
    v.raw = j.value("raw", std::string());
    v.judge_model = j.value("judge_model", std::string());
    v.ts = j.value("ts", std::string());
    v.retries = j.value("retries", 0);
    if (!(v.score >= 0.0 && v.score <= 1.0)) {
      throw Error(ErrorKind::validation, fmt::format("verdict {}/{} has score {} outside [0, 1]", v.sample_id, v.model, v.score));
    }
    return v;
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::validation, fmt::format("malformed verdict: {}", e.what()));
  }
}

JudgeVerdict judge(const EvalSample& sample, std::string_view model, std::string_view response, const JudgeContext& ctx) {
  if (ctx.client == nullptr) throw Error(ErrorKind::config, "judge has no client");
  const JudgePrompt prompt = build_judge_prompt(sample, response, ctx.params.missing_gold);
  conversation::ChatRequest request;
  request.messages = {{"user", prompt.text}};
  request.model = ctx.params.judge_model;
  request.temperature = ctx.params.temperature;
  request.max_tokens = ctx.params.max_tokens;
  request.tag = fmt::format("{}/{}", sample.id, model);

  int retries = 0;
  std::string raw;
  try {
    raw = with_retries(ctx.retry, ctx.sleep, retries, [&](int attempt) {
      if (ctx.limiter != nullptr) ctx.limiter->acquire();
      conversation::ChatRequest r = request;
      r.attempt = attempt;
      return ctx.client->complete(r);
    });
  } catch (const Error& e) {
    throw JudgeError(e.kind(), fmt::format("{} after {} retries", e.what(), retries), "", retries);
  }
  try {
    const double score = parse_score(raw);
    return JudgeVerdict{sample.id, std::string(model), score, raw, ctx.params.judge_model, ctx.clock(), retries};
  } catch (const Error& e) {
    throw JudgeError(e.kind(), e.what(), raw, retries);
  }
}

std::vector<ModelResponse> load_responses(const std::filesystem::path& path) {
  std::vector<ModelResponse> out;
  for (const Json& j : read_jsonl(path)) {
    try {
      out.push_back({j.at("sample_id").get<std::string>(), j.at("model").get<std::string>(), j.at("response").get<std::string>()});
    } catch (const Json::exception& e) {
      throw Error(ErrorKind::validation, fmt::format("malformed response record: {}", e.what()));
    }
  }
  return out;
}

Json to_json(const JudgeFailure& f) {
  return Json{{"sample_id", f.sample_id}, {"model", f.model}, {"kind", f.kind},
              {"message", f.message},     {"raw", f.raw},     {"retries", f.retries}};
}

EvaluationResult evaluate(const std::vector<EvalSample>& samples, const std::vector<ModelResponse>& responses,
                          const JudgeContext& ctx, std::size_t concurrency) {
  std::unordered_map<std::string_view, const EvalSample*> by_id;
  for (const EvalSample& s : samples) by_id.emplace(s.id, &s);
  std::vector<const EvalSample*> targets;
  for (const ModelResponse& r : responses) {
    const auto it = by_id.find(r.sample_id);
    if (it == by_id.end()) throw Error(ErrorKind::consistency, fmt::format("response for unknown sample '{}'", r.sample_id));
    targets.push_back(it->second);
  }

  std::vector<std::optional<JudgeVerdict>> verdicts(responses.size());
  std::vector<std::optional<JudgeFailure>> failures(responses.size());
  parallel_for(responses.size(), concurrency, [&](std::size_t i) {
    const ModelResponse& r = responses[i];
    try {
      verdicts[i] = judge(*targets[i], r.model, r.response, ctx);
    } catch (const JudgeError& e) {
      failures[i] = JudgeFailure{r.sample_id, r.model, std::string(to_string(e.kind())), e.what(), e.raw(), e.retries()};
    }
  });

  EvaluationResult result;
  for (std::size_t i = 0; i < responses.size(); ++i) {
    if (verdicts[i]) result.verdicts.push_back(std::move(*verdicts[i]));
    if (failures[i]) result.failures.push_back(std::move(*failures[i]));
    const EvalSample& s = *targets[i];
    if (uses_gold(s.category) && !s.gold && ctx.params.missing_gold == MissingGoldPolicy::warn) {
      result.warnings.push_back(fmt::format("sample {} ({}) judged without gold", s.id, to_string(s.category)));
    }
  }
  return result;
}

}  // namespace tokforge::evaluation
