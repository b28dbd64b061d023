#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "tokforge/common/io.hpp"

namespace tokforge::config {

inline constexpr std::string_view kManifestFile = "manifest.json";

struct RunManifest {
  std::string tool_version;
  std::string subcommand;
  Json config = Json::object();                   // fully resolved options
  std::map<std::string, std::string> inputs;      // path as given -> sha256
  std::map<std::string, std::string> templates;   // resource name -> sha256
  std::uint64_t seed = 0;
  std::string started;
  std::string finished;
};

[[nodiscard]] Json to_json(const RunManifest& m);

/// Hashes each input file. Throws Error(io) for unreadable files.
[[nodiscard]] std::map<std::string, std::string> hash_inputs(const std::vector<std::filesystem::path>& paths);

/// Records `m` under `output_name` in the directory's single manifest.json,
/// keeping entries written earlier for other outputs.
void record_manifest(const std::filesystem::path& output_dir, const std::string& output_name, const RunManifest& m);

}  // namespace tokforge::config
