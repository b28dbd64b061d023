#include <iostream>

#include "cli.hpp"
#include "tokforge/common/error.hpp"
#include "tokforge/evaluation/judge.hpp"
#include "tokforge/evaluation/report.hpp"

namespace tokforge::cli {

namespace fs = std::filesystem;
using namespace tokforge::evaluation;

namespace {

Command evaluate_cmd(CLI::App& app, Context& ctx) {
  auto* sub = app.add_subcommand("evaluate", "Score model responses with an LLM judge");
  struct Opts {
    fs::path eval_set, responses, out, failures;
    std::string endpoint;
    JudgeParams params;
    std::string missing_gold = "warn";
    std::size_t concurrency = 4;
    double rps = 0.0;
    int max_retries = 3;
  };
  auto o = std::make_shared<Opts>();
  sub->add_option("--eval-set", o->eval_set, "Evaluation samples, JSONL")->required()->check(CLI::ExistingFile);
  sub->add_option("--responses", o->responses, "Responses, JSONL {sample_id, model, response}")->required()->check(CLI::ExistingFile);
  sub->add_option("--judge-endpoint", o->endpoint, "Chat-completion URL, or mock:<script.json>")->required();
  sub->add_option("--judge-model", o->params.judge_model, "Judge model name")->capture_default_str();
  sub->add_option("--judge-temperature", o->params.temperature, "Judge temperature")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--missing-gold", o->missing_gold, "warn: judge without reference; error: abort")
      ->capture_default_str()
      ->check(CLI::IsMember({"warn", "error"}));
  sub->add_option("--concurrency", o->concurrency, "Requests in flight")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--rps", o->rps, "Request rate limit per second (0 = none)")->capture_default_str();
  sub->add_option("--max-retries", o->max_retries, "Retries after a transport failure")->capture_default_str();
  sub->add_option("--out", o->out, "Verdicts, JSONL")->required();
  sub->add_option("--failures", o->failures, "Failure log, JSONL (default: <out>.failures.jsonl)");
  return {sub, [o, &ctx] {
            o->params.missing_gold = o->missing_gold == "error" ? MissingGoldPolicy::error : MissingGoldPolicy::warn;
            auto client = conversation::make_chat_client(o->endpoint);
            RateLimiter limiter(o->rps);
            JudgeContext jc;
            jc.client = client.get();
            jc.params = o->params;
            jc.retry.max_retries = o->max_retries;
            jc.clock = ctx.clock();
            jc.limiter = &limiter;
            if (o->endpoint.starts_with("mock:")) jc.sleep = [](std::chrono::milliseconds) {};
            const auto samples = load_eval_set(o->eval_set);
            const auto result = evaluate(samples, load_responses(o->responses), jc, o->concurrency);
            for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
            std::vector<Json> verdicts;
            for (const auto& v : result.verdicts) verdicts.push_back(to_json(v));
            write_jsonl(o->out, verdicts);
            const fs::path failures = o->failures.empty() ? fs::path(o->out.string() + ".failures.jsonl") : o->failures;
            std::vector<Json> failed;
            for (const auto& f : result.failures) failed.push_back(to_json(f));
            write_jsonl(failures, failed);
            print_json(Json{{"verdicts", result.verdicts.size()}, {"failures", result.failures.size()}});
            std::vector<fs::path> inputs{o->eval_set, o->responses};
            if (o->endpoint.size() > 5 && o->endpoint.starts_with("mock:")) inputs.emplace_back(o->endpoint.substr(5));
            ctx.finish({o->out, failures}, inputs, {std::string(kJudgeGoldTemplate), std::string(kJudgeNoGoldTemplate)});
          }};
}

Command score_report_cmd(CLI::App& app, Context& ctx) {
  auto* sub = app.add_subcommand("score-report", "Per-category and macro-averaged scores from stored verdicts");
  struct Opts {
    fs::path verdicts, eval_set, out;
  };
  auto o = std::make_shared<Opts>();
  sub->add_option("--verdicts", o->verdicts, "Verdicts, JSONL")->required()->check(CLI::ExistingFile);
  sub->add_option("--eval-set", o->eval_set, "Evaluation samples, JSONL")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", o->out, "Report JSON")->required();
  return {sub, [o, &ctx] {
            std::vector<JudgeVerdict> verdicts;
            for (const Json& j : read_jsonl(o->verdicts)) verdicts.push_back(verdict_from_json(j));
            const auto reports = aggregate(verdicts, load_eval_set(o->eval_set));
            for (const auto& r : reports) {
              for (const auto& w : r.warnings) std::cerr << "warning: " << w << '\n';
            }
            const Json report = to_json(reports);
            write_json(o->out, report);
            print_json(report);
            ctx.finish({o->out}, {o->verdicts, o->eval_set});
          }};
}

}  // namespace

std::vector<Command> evaluation_commands(CLI::App& app, Context& ctx) { return {evaluate_cmd(app, ctx), score_report_cmd(app, ctx)}; }

}  // namespace tokforge::cli
