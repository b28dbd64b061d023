#include <iostream>

#include "cli.hpp"
#include "tokforge/common/error.hpp"
#include "tokforge/conversation/cleaning.hpp"
#include "tokforge/conversation/generation.hpp"
#include "tokforge/tokenizer/tokenizer_io.hpp"

namespace tokforge::cli {

namespace fs = std::filesystem;
using namespace tokforge::conversation;

namespace {

Command clean_conv_cmd(CLI::App& app, Context& ctx) {
  auto* sub = app.add_subcommand("clean-conv", "Language filter and max-token segmentation of conversations");
  struct Opts {
    fs::path in, out, tokenizer, report;
    std::string keep = "zh,en";
    std::size_t max_tokens = 2048;
  };
  auto o = std::make_shared<Opts>();
  sub->add_option("--in", o->in, "Conversations, JSONL (ShareGPT records accepted)")->required()->check(CLI::ExistingFile);
  sub->add_option("--keep", o->keep, "Languages to keep: any of zh,en,mixed,other")->capture_default_str();
  sub->add_option("--max-tokens", o->max_tokens, "Token budget per segment")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--tokenizer", o->tokenizer, "Tokenizer directory used to count tokens")->required()->check(CLI::ExistingDirectory);
  sub->add_option("--out", o->out, "Segments, JSONL")->required();
  sub->add_option("--report", o->report, "Cleaning report JSON");
  return {sub, [o, &ctx] {
            std::set<Language> keep;
            for (const std::string& name : split_list(o->keep)) keep.insert(language_from_string(name));
            const auto tok = tokenizer::load_tokenizer(o->tokenizer);
            auto convs = load_conversations(o->in);
            const auto filtered = filter_languages(std::move(convs), keep);
            const auto segmented = segment_all(filtered.kept, o->max_tokens, counter_for(tok), ctx.threads());
            save_conversations(o->out, segmented.segments);
            const Json report{{"language_filter",
                               {{"input", filtered.report.input},
                                {"output", filtered.report.output},
                                {"removed", filtered.report.removed}}},
                              {"segmentation", to_json(segmented.report)}};
            print_json(report);
            std::vector<fs::path> outputs{o->out};
            if (!o->report.empty()) {
              write_json(o->report, report);
              outputs.push_back(o->report);
            }
            ctx.finish(outputs, {o->in, o->tokenizer / tokenizer::kVocabFile, o->tokenizer / tokenizer::kMergesFile});
          }};
}

Command gen_conv_cmd(CLI::App& app, Context& ctx) {
  auto* sub = app.add_subcommand("gen-conv", "Generate multi-turn conversations from seed first turns");
  struct Opts {
    fs::path seeds, out, failures;
    std::string endpoint;
    GenerationParams params;
    int turns = 6;
    std::size_t concurrency = 4;
    double rps = 0.0;
    int max_retries = 3;
  };
  auto o = std::make_shared<Opts>();
  sub->add_option("--seeds", o->seeds, "Seeds, JSONL {id, text} or conversations")->required()->check(CLI::ExistingFile);
  sub->add_option("--endpoint", o->endpoint, "Chat-completion URL, or mock:<script.json>")->required();
  sub->add_option("--model", o->params.model, "Generator model name")->capture_default_str();
  sub->add_option("--temperature", o->params.temperature, "Sampling temperature")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--max-new-tokens", o->params.max_new_tokens, "Completion token limit")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_option("--turns", o->turns, "Turns per generated conversation")->capture_default_str()->check(CLI::Range(2, 64));
  sub->add_option("--concurrency", o->concurrency, "Requests in flight")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--rps", o->rps, "Request rate limit per second (0 = none)")->capture_default_str();
  sub->add_option("--max-retries", o->max_retries, "Retries after a transport failure")->capture_default_str();
  sub->add_option("--out", o->out, "Generated conversations, JSONL")->required();
  sub->add_option("--failures", o->failures, "Failure log, JSONL (default: <out>.failures.jsonl)");
  return {sub, [o, &ctx] {
            o->params.endpoint = o->endpoint;
            auto client = make_chat_client(o->endpoint);
            GenerationOptions opts;
            opts.concurrency = o->concurrency;
            opts.requests_per_second = o->rps;
            opts.retry.max_retries = o->max_retries;
            if (o->endpoint.starts_with("mock:")) opts.sleep = [](std::chrono::milliseconds) {};
            const auto result = generate_conversations(load_seeds(o->seeds), *client, o->params, o->turns, opts);
            save_conversations(o->out, result.conversations);
            const fs::path failures = o->failures.empty() ? fs::path(o->out.string() + ".failures.jsonl") : o->failures;
            std::vector<Json> records;
            for (const auto& f : result.failures) records.push_back(to_json(f));
            write_jsonl(failures, records);
            print_json(Json{{"conversations", result.conversations.size()}, {"failures", result.failures.size()}});
            std::vector<fs::path> inputs{o->seeds};
            if (o->endpoint.size() > 5 && o->endpoint.starts_with("mock:")) inputs.emplace_back(o->endpoint.substr(5));
            ctx.finish({o->out, failures}, inputs, {std::string(kSeedPromptTemplate)});
          }};
}

}  // namespace

std::vector<Command> conversation_commands(CLI::App& app, Context& ctx) { return {clean_conv_cmd(app, ctx), gen_conv_cmd(app, ctx)}; }

}  // namespace tokforge::cli
