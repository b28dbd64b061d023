#include "cli.hpp"
#include "tokforge/config/datasets.hpp"
#include "tokforge/config/training_config.hpp"

namespace tokforge::cli {

namespace fs = std::filesystem;

namespace {

Command train_config_cmd(CLI::App& app, Context& ctx) {
  auto* sub = app.add_subcommand("train-config", "Emit the fine-tuning configuration with optional overrides");
  struct Opts {
    std::vector<std::string> overrides;
    fs::path out;
  };
  auto o = std::make_shared<Opts>();
  sub->add_option("--set", o->overrides, "Override as key=value (repeatable); lr is an alias of learning_rate");
  sub->add_option("--out", o->out, "Config JSON path");
  return {sub, [o, &ctx] {
            const auto cfg = config::apply_overrides(config::TrainingConfig{}, config::parse_overrides(o->overrides));
            print_json(to_json(cfg));
            if (!o->out.empty()) {
              write_json(o->out, to_json(cfg));
              ctx.finish({o->out}, {});
            }
          }};
}

Command resolve_mixture_cmd(CLI::App& app, Context& ctx) {
  auto* sub = app.add_subcommand("resolve-mixture", "Expand a dataset mixture such as zh(alpaca-3.5&4)+sharegpt");
  struct Opts {
    std::string expression;
    fs::path out;
  };
  auto o = std::make_shared<Opts>();
  sub->add_option("expression", o->expression, "Mixture expression")->required();
  sub->add_option("--out", o->out, "Resolved list JSON path");
  return {sub, [o, &ctx] {
            const auto registry = config::DatasetRegistry::builtin();
            Json datasets = Json::array();
            for (const auto* d : registry.resolve_mixture(o->expression)) {
              datasets.push_back(to_json(*d));
            }
            const Json out{{"expression", o->expression}, {"datasets", std::move(datasets)}};
            print_json(out);
            if (!o->out.empty()) {
              write_json(o->out, out);
              ctx.finish({o->out}, {});
            }
          }};
}

}  // namespace

std::vector<Command> config_commands(CLI::App& app, Context& ctx) {
  return {train_config_cmd(app, ctx), resolve_mixture_cmd(app, ctx)};
}

}  // namespace tokforge::cli
