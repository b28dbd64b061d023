#include "tokforge/corpus/pipeline.hpp"

#include <set>

#include <fmt/format.h>

#include "tokforge/common/error.hpp"

namespace tokforge::corpus {

void CleaningReport::append(const StageReport& stage) {
  if (stages.empty()) input = stage.input;
  stages.push_back(stage);
  output = stage.output;
}

void CleaningReport::validate() const {
  std::size_t expected_input = input;
  for (const StageReport& s : stages) {
    if (s.input != s.output + s.removed) {
      throw Error(ErrorKind::validation, fmt::format("stage {}: input {} != output {} + removed {}", s.stage, s.input, s.output, s.removed));
    }
    if (s.input != expected_input) {
      throw Error(ErrorKind::validation, fmt::format("stage {} starts from {} documents, previous stage left {}", s.stage, s.input, expected_input));
    }
    expected_input = s.output;
  }
  if (expected_input != output) {
    throw Error(ErrorKind::validation, fmt::format("report output {} does not match the last stage ({})", output, expected_input));
  }
}

Json to_json(const CleaningReport& report) {
  Json stages = Json::array();
  for (const StageReport& s : report.stages) {
    stages.push_back({{"stage", s.stage}, {"input", s.input}, {"output", s.output}, {"removed", s.removed}});
  }
  return Json{{"input", report.input}, {"output", report.output}, {"stages", std::move(stages)}};
}

CleaningReport cleaning_report_from_json(const Json& j) {
  CleaningReport r;
  try {
    r.input = j.at("input").get<std::size_t>();
    r.output = j.at("output").get<std::size_t>();
    for (const Json& s : j.at("stages")) {
      r.stages.push_back({s.at("stage").get<std::string>(), s.at("input").get<std::size_t>(),
                          s.at("output").get<std::size_t>(), s.at("removed").get<std::size_t>()});
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::validation, fmt::format("malformed cleaning report: {}", e.what()));
  }
  r.validate();
  return r;
}

namespace {

void reject_unknown(const Json& j, std::initializer_list<std::string_view> known, std::string_view where) {
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw Error(ErrorKind::config, fmt::format("unknown field '{}' in {}", key, where));
    }
  }
}

}  // namespace

PipelineConfig pipeline_config_from_json(const Json& j) {
  PipelineConfig c;
  try {
    reject_unknown(j, {"stages", "semantic_dedup", "ppl_filter", "lm"}, "pipeline config");
    if (j.contains("stages")) {
      for (const Json& s : j["stages"]) {
        const auto name = s.get<std::string>();
        if (name != kExactDedup && name != kSemanticDedup && name != kPplFilter) {
          throw Error(ErrorKind::config, fmt::format("unknown cleaning stage '{}'", name));
        }
        c.stages.push_back(name);
      }
    }
    if (j.contains("semantic_dedup")) {
      const Json& s = j["semantic_dedup"];
      reject_unknown(s, {"threshold", "num_hashes", "shingle_size"}, "semantic_dedup");
      c.semantic.jaccard_threshold = s.value("threshold", c.semantic.jaccard_threshold);
      c.semantic.num_hashes = s.value("num_hashes", c.semantic.num_hashes);
      c.semantic.shingle_size = s.value("shingle_size", c.semantic.shingle_size);
    }
    if (j.contains("ppl_filter")) {
      const Json& p = j["ppl_filter"];
      reject_unknown(p, {"percentile", "threshold"}, "ppl_filter");
      if (p.contains("percentile") && p.contains("threshold")) {
        throw Error(ErrorKind::config, "ppl_filter takes either 'percentile' or 'threshold', not both");
      }
      if (p.contains("threshold")) c.cutoff = AbsoluteThreshold{p["threshold"].get<double>()};
      if (p.contains("percentile")) c.cutoff = PercentileCutoff{p["percentile"].get<double>()};
    }
    if (j.contains("lm")) {
      const Json& l = j["lm"];
      reject_unknown(l, {"order", "smoothing", "add_k", "discount", "unk_min_count"}, "lm");
      c.lm.order = l.value("order", c.lm.order);
      if (l.contains("smoothing")) c.lm.smoothing = smoothing_from_string(l["smoothing"].get<std::string>());
      c.lm.add_k = l.value("add_k", c.lm.add_k);
      c.lm.discount = l.value("discount", c.lm.discount);
      c.lm.unk_min_count = l.value("unk_min_count", c.lm.unk_min_count);
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::config, fmt::format("malformed pipeline config: {}", e.what()));
  }
  return c;
}

Json to_json(const PipelineConfig& c) {
  Json ppl;
  if (const auto* p = std::get_if<PercentileCutoff>(&c.cutoff)) ppl["percentile"] = p->percentile;
  else ppl["threshold"] = std::get<AbsoluteThreshold>(c.cutoff).max_ppl;
  return Json{{"stages", c.stages},
              {"semantic_dedup",
               {{"threshold", c.semantic.jaccard_threshold},
                {"num_hashes", c.semantic.num_hashes},
                {"shingle_size", c.semantic.shingle_size}}},
              {"ppl_filter", ppl},
              {"lm",
               {{"order", c.lm.order},
                {"smoothing", to_string(c.lm.smoothing)},
                {"add_k", c.lm.add_k},
                {"discount", c.lm.discount},
                {"unk_min_count", c.lm.unk_min_count}}}};
}

PipelineResult clean_pipeline(const std::vector<Document>& docs, const PipelineConfig& config, const NgramLM* lm) {
  PipelineResult result;
  result.kept = docs;
  result.report.input = docs.size();
  result.report.output = docs.size();
  for (const std::string& stage : config.stages) {
    FilterResult step;
    if (stage == kExactDedup) {
      step = exact_dedup(result.kept);
    } else if (stage == kSemanticDedup) {
      step = semantic_dedup(result.kept, config.semantic);
    } else if (stage == kPplFilter) {
      if (lm == nullptr) throw Error(ErrorKind::config, "ppl_filter stage needs a reference language model");
      step = ppl_filter(result.kept, *lm, config.cutoff).filtered;
    } else {
      throw Error(ErrorKind::config, fmt::format("unknown cleaning stage '{}'", stage));
    }
    result.kept = std::move(step.kept);
    result.report.append(step.report);
  }
  result.report.validate();
  return result;
}

}  // namespace tokforge::corpus
