#include <fmt/format.h>

#include "cli.hpp"
#include "tokforge/common/error.hpp"
#include "tokforge/corpus/diversity.hpp"
#include "tokforge/corpus/pipeline.hpp"

namespace tokforge::cli {

namespace fs = std::filesystem;
using namespace tokforge::corpus;

namespace {

std::vector<std::string> reference_texts(const fs::path& path) {
  if (path.extension() == ".jsonl") {
    std::vector<std::string> texts;
    for (const Document& d : load_documents(path)) texts.push_back(d.text);
    return texts;
  }
  return read_lines(path);
}

Command clean_corpus_cmd(CLI::App& app, Context& ctx) {
  auto* sub = app.add_subcommand("clean-corpus", "Exact dedup, MinHash dedup and perplexity filtering of a JSONL corpus");
  struct Opts {
    fs::path in, out, report, diversity, pipeline, lm_reference;
    std::string stages = "exact_dedup,semantic_dedup,ppl_filter";
    double threshold = 0.8;
    std::size_t num_hashes = 128;
    std::size_t shingle_size = 5;
    double ppl_percentile = 90.0;
    double ppl_max = 0.0;
    int lm_order = 3;
    std::string lm_smoothing = "interpolated";
  };
  auto o = std::make_shared<Opts>();
  sub->add_option("--in", o->in, "Input documents, JSONL {id, text, meta?, language?}")->required()->check(CLI::ExistingFile);
  sub->add_option("--out", o->out, "Kept documents, JSONL")->required();
  sub->add_option("--report", o->report, "Cleaning report JSON");
  sub->add_option("--diversity", o->diversity, "Token diversity report JSON for the kept documents");
  sub->add_option("--pipeline", o->pipeline, "Pipeline JSON; the flags below override it")->check(CLI::ExistingFile);
  auto* stages = sub->add_option("--stages", o->stages, "Comma-separated stages in order")->capture_default_str();
  auto* threshold = sub->add_option("--threshold", o->threshold, "Jaccard threshold for semantic dedup")->capture_default_str();
  auto* hashes = sub->add_option("--num-hashes", o->num_hashes, "MinHash signature length")->capture_default_str();
  auto* shingle = sub->add_option("--shingle-size", o->shingle_size, "Character shingle length")->capture_default_str();
  auto* pct = sub->add_option("--ppl-percentile", o->ppl_percentile, "Keep this percentage of lowest-perplexity documents")
                  ->capture_default_str();
  auto* max = sub->add_option("--ppl-max", o->ppl_max, "Keep documents with perplexity at most this value");
  pct->excludes(max);
  auto* order = sub->add_option("--lm-order", o->lm_order, "n-gram order")->capture_default_str()->check(CLI::Range(1, 8));
  auto* smoothing = sub->add_option("--lm-smoothing", o->lm_smoothing, "add_k or interpolated")
                        ->capture_default_str()
                        ->check(CLI::IsMember({"add_k", "interpolated"}));
  sub->add_option("--lm-reference", o->lm_reference, "Reference text (.txt lines or .jsonl documents) for the LM; default: the input")
      ->check(CLI::ExistingFile);

  return {sub, [=, &ctx] {
            PipelineConfig cfg = o->pipeline.empty() ? pipeline_config_from_json(Json::object())
                                                     : pipeline_config_from_json(read_json(o->pipeline));
            if (o->pipeline.empty() || stages->count() > 0) cfg.stages = split_list(o->stages);
            if (threshold->count() > 0) cfg.semantic.jaccard_threshold = o->threshold;
            if (hashes->count() > 0) cfg.semantic.num_hashes = o->num_hashes;
            if (shingle->count() > 0) cfg.semantic.shingle_size = o->shingle_size;
            if (pct->count() > 0) cfg.cutoff = PercentileCutoff{o->ppl_percentile};
            if (max->count() > 0) cfg.cutoff = AbsoluteThreshold{o->ppl_max};
            if (order->count() > 0) cfg.lm.order = o->lm_order;
            if (smoothing->count() > 0) cfg.lm.smoothing = smoothing_from_string(o->lm_smoothing);
            cfg.semantic.seed = ctx.global.seed;
            // Re-validate the merged configuration the same way a file is checked.
            cfg = pipeline_config_from_json(to_json(cfg));
            cfg.semantic.seed = ctx.global.seed;

            const auto docs = load_documents(o->in);
            std::vector<fs::path> inputs{o->in};
            if (!o->pipeline.empty()) inputs.push_back(o->pipeline);
            std::optional<NgramLM> lm;
            if (std::find(cfg.stages.begin(), cfg.stages.end(), kPplFilter) != cfg.stages.end()) {
              std::vector<std::string> texts;
              if (o->lm_reference.empty()) {
                for (const Document& d : docs) texts.push_back(d.text);
              } else {
                texts = reference_texts(o->lm_reference);
                inputs.push_back(o->lm_reference);
              }
              lm = NgramLM::train(texts, cfg.lm);
            }
            const auto result = clean_pipeline(docs, cfg, lm ? &*lm : nullptr);
            save_documents(o->out, result.kept);
            std::vector<fs::path> outputs{o->out};
            Json report = to_json(result.report);
            report["pipeline"] = to_json(cfg);
            if (!o->report.empty()) {
              write_json(o->report, report);
              outputs.push_back(o->report);
            }
            if (!o->diversity.empty()) {
              write_json(o->diversity, to_json(diversity_report(result.kept)));
              outputs.push_back(o->diversity);
            }
            print_json(to_json(result.report));
            ctx.finish(outputs, inputs);
          }};
}

}  // namespace

std::vector<Command> corpus_commands(CLI::App& app, Context& ctx) { return {clean_corpus_cmd(app, ctx)}; }

}  // namespace tokforge::cli
