#include "cli.hpp"

#include <iostream>
#include <thread>

#include "tokforge/common/error.hpp"
#include "tokforge/common/resources.hpp"
#include "tokforge/config/manifest.hpp"

namespace tokforge::cli {

std::size_t Context::threads() const {
  if (global.threads > 0) return global.threads;
  return std::max(1u, std::thread::hardware_concurrency());
}

TimestampFn Context::clock() const { return global.clock == "fixed" ? fixed_timestamps() : system_clock_timestamps(); }

void Context::begin(const CLI::App& sub) {
  sub_ = &sub;
  started_ = clock()();
}

void Context::finish(const std::vector<std::filesystem::path>& outputs, const std::vector<std::filesystem::path>& inputs,
                     const std::vector<std::string>& templates) const {
  config::RunManifest m;
  m.tool_version = TOKFORGE_VERSION;
  m.subcommand = sub_ != nullptr ? sub_->get_name() : "";
  m.config = Json{{"global", resolved_options(root_)}, {"options", sub_ != nullptr ? resolved_options(*sub_) : Json::object()}};
  m.inputs = config::hash_inputs(inputs);
  for (const std::string& t : templates) m.templates[t] = resource_sha256(t);
  m.seed = global.seed;
  m.started = started_;
  m.finished = clock()();
  for (const auto& out : outputs) {
    const auto dir = out.has_parent_path() ? out.parent_path() : std::filesystem::path(".");
    config::record_manifest(dir, out.filename().string(), m);
  }
}

Json resolved_options(const CLI::App& app) {
  Json out = Json::object();
  for (const CLI::Option* opt : app.get_options()) {
    if (opt->get_lnames().empty()) continue;
    const std::string& name = opt->get_lnames().front();
    if (name == "help" || name == "config" || name == "version") continue;
    const auto& res = opt->results();
    if (opt->get_items_expected_max() > 1) {
      out[name] = res;
    } else if (res.empty()) {
      out[name] = opt->get_default_str();
    } else if (res.size() == 1) {
      out[name] = res.front();
    } else {
      out[name] = res;
    }
  }
  return out;
}

namespace {

void flatten(const Json& j, std::vector<std::string>& parents, std::vector<CLI::ConfigItem>& items) {
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      parents.push_back(key);
      flatten(value, parents, items);
      parents.pop_back();
      continue;
    }
    CLI::ConfigItem item;
    item.parents = parents;
    item.name = key;
    auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    if (value.is_array()) {
      for (const Json& v : value) item.inputs.push_back(scalar(v));
    } else {
      item.inputs.push_back(scalar(value));
    }
    items.push_back(std::move(item));
  }
}

}  // namespace

std::vector<CLI::ConfigItem> JsonConfig::from_config(std::istream& input) const {
  Json j;
  try {
    j = Json::parse(input);
  } catch (const Json::exception& e) {
    throw CLI::ConversionError(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw CLI::ConversionError("config file must hold a JSON object");
  std::vector<std::string> parents;
  std::vector<CLI::ConfigItem> items;
  flatten(j, parents, items);
  return items;
}

std::string JsonConfig::to_config(const CLI::App* app, bool, bool, std::string) const {
  Json j = resolved_options(*app);
  for (const CLI::App* sub : app->get_subcommands({})) j[sub->get_name()] = resolved_options(*sub);
  return j.dump(2) + "\n";
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',') {
      if (i > start) out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

void print_json(const Json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace tokforge::cli
