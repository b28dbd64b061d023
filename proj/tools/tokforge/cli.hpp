#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tokforge/common/clock.hpp"
#include "tokforge/common/io.hpp"

namespace tokforge::cli {

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::size_t threads = 0;  // 0: one per hardware thread
  std::string clock = "system";
};

/// Shared state for one invocation.
class Context {
 public:
  explicit Context(CLI::App& root) : root_(root) {}

  GlobalOptions global;

  [[nodiscard]] std::size_t threads() const;
  [[nodiscard]] TimestampFn clock() const;

  /// Marks the start of the selected subcommand.
  void begin(const CLI::App& sub);

  /// Writes one manifest entry per output file into that file's directory.
  void finish(const std::vector<std::filesystem::path>& outputs, const std::vector<std::filesystem::path>& inputs,
              const std::vector<std::string>& templates = {}) const;

 private:
  CLI::App& root_;
  const CLI::App* sub_ = nullptr;
  std::string started_;
};

/// A subcommand and what to run once it has been parsed.
struct Command {
  CLI::App* app = nullptr;
  std::function<void()> run;
};

/// Resolved option values of an app (given or default), keyed by long name.
[[nodiscard]] Json resolved_options(const CLI::App& app);

/// Reads JSON config files: top-level keys are global options, nested objects
/// are subcommand sections, arrays become repeated values.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App* app, bool default_also, bool write_description, std::string prefix) const override;
  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override;
};

/// Comma-separated list, empty items dropped.
[[nodiscard]] std::vector<std::string> split_list(const std::string& s);

void print_json(const Json& j);

std::vector<Command> tokenizer_commands(CLI::App& app, Context& ctx);
std::vector<Command> corpus_commands(CLI::App& app, Context& ctx);
std::vector<Command> conversation_commands(CLI::App& app, Context& ctx);
std::vector<Command> evaluation_commands(CLI::App& app, Context& ctx);
std::vector<Command> config_commands(CLI::App& app, Context& ctx);

}  // namespace tokforge::cli
