#include <iostream>

#include "cli.hpp"
#include "tokforge/common/error.hpp"

namespace {

void print_error(std::string_view kind, std::string_view subcommand, std::string_view message) {
  const tokforge::Json err{{"error", {{"kind", kind}, {"subcommand", subcommand}, {"message", message}}}};
  std::cerr << err.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  using namespace tokforge;
  CLI::App app{"Vocabulary extension, corpus cleaning and LLM-judge evaluation toolkit", "tokforge"};
  app.set_version_flag("--version", TOKFORGE_VERSION);
  app.config_formatter(std::make_shared<cli::JsonConfig>());
  app.set_config("--config", "", "JSON file with option values; nested objects configure subcommands");
  cli::Context ctx(app);
  app.add_option("--seed", ctx.global.seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--threads", ctx.global.threads, "Worker threads (0 = all hardware threads)")->capture_default_str();
  app.add_option("--clock", ctx.global.clock, "Timestamp source for records and manifests")
      ->check(CLI::IsMember({"system", "fixed"}))
      ->capture_default_str();
  app.require_subcommand(1);

  std::vector<cli::Command> commands;
  for (auto* add : {&cli::tokenizer_commands, &cli::corpus_commands, &cli::conversation_commands,
                    &cli::evaluation_commands, &cli::config_commands}) {
    for (auto& c : (*add)(app, ctx)) commands.push_back(std::move(c));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  for (const cli::Command& c : commands) {
    if (!c.app->parsed()) continue;
    try {
      ctx.begin(*c.app);
      c.run();
      return 0;
    } catch (const Error& e) {
      print_error(to_string(e.kind()), c.app->get_name(), e.what());
    } catch (const std::exception& e) {
      print_error("internal", c.app->get_name(), e.what());
    }
    return 1;
  }
  return 2;
}
