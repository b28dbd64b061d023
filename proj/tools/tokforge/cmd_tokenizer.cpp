#include <iostream>

#include <fmt/format.h>

#include "cli.hpp"
#include "tokforge/common/error.hpp"
#include "tokforge/tokenizer/bpe_trainer.hpp"
#include "tokforge/tokenizer/resize_plan.hpp"
#include "tokforge/tokenizer/token_stats.hpp"
#include "tokforge/tokenizer/tokenizer_io.hpp"
#include "tokforge/tokenizer/vocab_merge.hpp"

namespace tokforge::cli {

namespace fs = std::filesystem;
using namespace tokforge::tokenizer;

namespace {

std::vector<fs::path> tokenizer_files(const fs::path& dir) { return {dir / kVocabFile, dir / kMergesFile}; }

Command train_bpe_cmd(CLI::App& app, Context& ctx) {
  auto* sub = app.add_subcommand("train-bpe", "Train a byte-level BPE tokenizer on text lines");
  struct Opts {
    std::vector<fs::path> inputs;
    fs::path out;
    std::size_t vocab_size = 50000;
    std::size_t min_frequency = 2;
    bool no_byte_fallback = false;
  };
  auto o = std::make_shared<Opts>();
  sub->add_option("--input,--in", o->inputs, "Training text files, one example per line")->required()->check(CLI::ExistingFile);
  sub->add_option("--vocab-size", o->vocab_size, "Target vocabulary size")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--min-frequency", o->min_frequency, "Stop when the best pair occurs less often")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sub->add_flag("--no-byte-fallback", o->no_byte_fallback, "Seed the alphabet with observed bytes only");
  sub->add_option("--out", o->out, "Output directory for vocab.txt and merges.txt")->required();
  return {sub, [o, &ctx] {
            std::vector<std::string> lines;
            for (const auto& p : o->inputs) {
              auto part = read_lines(p);
              lines.insert(lines.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
            }
            const auto result = train_bpe(lines, {.target_vocab_size = o->vocab_size,
                                                  .byte_fallback = !o->no_byte_fallback,
                                                  .min_frequency = o->min_frequency});
            save_tokenizer(o->out, result.vocab, result.merges);
            for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
            print_json(Json{{"vocab_size", result.vocab.size()},
                            {"merges", result.merges.size()},
                            {"exhausted", result.exhausted},
                            {"byte_fallback", result.vocab.byte_fallback()}});
            ctx.finish(tokenizer_files(o->out), o->inputs);
          }};
}

Command merge_vocab_cmd(CLI::App& app, Context& ctx) {
  auto* sub = app.add_subcommand("merge-vocab", "Extend a base tokenizer with the tokens and merges of another");
  struct Opts {
    fs::path base, extension, out;
  };
  auto o = std::make_shared<Opts>();
  sub->add_option("--base", o->base, "Base tokenizer directory")->required()->check(CLI::ExistingDirectory);
  sub->add_option("--ext,--extension", o->extension, "Extension tokenizer directory")->required()->check(CLI::ExistingDirectory);
  sub->add_option("--out", o->out, "Output directory")->required();
  return {sub, [o, &ctx] {
            const Tokenizer base = load_tokenizer(o->base);
            const Tokenizer ext = load_tokenizer(o->extension);
            const auto merged = merge_vocab(base.vocab(), base.merges(), ext.vocab(), ext.merges());
            save_tokenizer(o->out, merged.vocab, merged.merges);
            const Json report{{"base_size", base.vocab().size()},
                              {"extension_size", ext.vocab().size()},
                              {"overlap", merged.overlap},
                              {"merged_size", merged.vocab.size()},
                              {"merges", merged.merges.size()}};
            write_json(o->out / "merge_report.json", report);
            print_json(report);
            auto outputs = tokenizer_files(o->out);
            outputs.push_back(o->out / "merge_report.json");
            auto inputs = tokenizer_files(o->base);
            for (const auto& p : tokenizer_files(o->extension)) inputs.push_back(p);
            ctx.finish(outputs, inputs);
          }};
}

Command tok_stats_cmd(CLI::App& app, Context& ctx) {
  auto* sub = app.add_subcommand("tok-stats", "Compare tokens per line across tokenizers on the same lines");
  struct Opts {
    fs::path lines, out;
    std::vector<std::string> tokenizers;
  };
  auto o = std::make_shared<Opts>();
  sub->add_option("--input,--lines", o->lines, "Text file, one line per sample")->required()->check(CLI::ExistingFile);
  sub->add_option("--tokenizer", o->tokenizers,
                  "Tokenizer as NAME=DIR or DIR; repeat to compare (first is the base for the reduction ratio)")
      ->required();
  sub->add_option("--out", o->out, "Report JSON path");
  return {sub, [o, &ctx] {
            std::vector<std::string> names;
            std::vector<Tokenizer> toks;
            std::vector<fs::path> inputs{o->lines};
            for (const std::string& entry : o->tokenizers) {
              const auto eq = entry.find('=');
              const fs::path dir = eq == std::string::npos ? fs::path(entry) : fs::path(entry.substr(eq + 1));
              names.push_back(eq == std::string::npos ? dir.filename().string() : entry.substr(0, eq));
              toks.push_back(load_tokenizer(dir));
              for (const auto& p : tokenizer_files(dir)) inputs.push_back(p);
            }
            std::vector<NamedTokenizer> named;
            for (std::size_t i = 0; i < toks.size(); ++i) named.push_back({names[i], &toks[i]});
            const auto lines = read_lines(o->lines);
            const Json report = to_json(tok_stats(lines, named, ctx.threads()));
            print_json(report);
            if (!o->out.empty()) {
              write_json(o->out, report);
              ctx.finish({o->out}, inputs);
            }
          }};
}

Command resize_plan_cmd(CLI::App& app, Context& ctx) {
  auto* sub = app.add_subcommand("resize-plan", "Plan the embedding resize from a base to a merged vocabulary");
  struct Opts {
    fs::path base, merged, out;
    std::size_t dim = 4096;
    std::string init = "mean_of_copied";
  };
  auto o = std::make_shared<Opts>();
  sub->add_option("--base", o->base, "Base tokenizer directory")->required()->check(CLI::ExistingDirectory);
  sub->add_option("--merged", o->merged, "Merged tokenizer directory")->required()->check(CLI::ExistingDirectory);
  sub->add_option("--dim,--embedding-dim", o->dim, "Embedding width")->capture_default_str()->check(CLI::PositiveNumber);
  sub->add_option("--init", o->init, "Initialisation of new rows")
      ->capture_default_str()
      ->check(CLI::IsMember({"mean_of_copied", "zero"}));
  sub->add_option("--out", o->out, "Plan JSON path")->required();
  return {sub, [o, &ctx] {
            const auto plan = resize_plan(load_vocab(o->base), load_vocab(o->merged), o->dim, init_rule_from_string(o->init));
            write_json(o->out, to_json(plan));
            print_json(Json{{"old_size", plan.old_size}, {"new_size", plan.new_size}, {"new_rows", plan.new_rows.size()}});
            ctx.finish({o->out}, {o->base / kVocabFile, o->merged / kVocabFile});
          }};
}

}  // namespace

std::vector<Command> tokenizer_commands(CLI::App& app, Context& ctx) {
  return {train_bpe_cmd(app, ctx), merge_vocab_cmd(app, ctx), tok_stats_cmd(app, ctx), resize_plan_cmd(app, ctx)};
}

}  // namespace tokforge::cli
