#include "tokforge/config/manifest.hpp"

#include "tokforge/common/hash.hpp"

namespace tokforge::config {

Json to_json(const RunManifest& m) {
  Json inputs = Json::object();
  for (const auto& [k, v] : m.inputs) inputs[k] = v;
  Json templates = Json::object();
  for (const auto& [k, v] : m.templates) templates[k] = v;
  return Json{{"tool_version", m.tool_version},
              {"subcommand", m.subcommand},
              {"config", m.config},
              {"inputs", std::move(inputs)},
              {"templates", std::move(templates)},
              {"seed", m.seed},
              {"started", m.started},
              {"finished", m.finished}};
}

std::map<std::string, std::string> hash_inputs(const std::vector<std::filesystem::path>& paths) {
  std::map<std::string, std::string> out;
  for (const auto& p : paths) out[p.generic_string()] = sha256_file(p);
  return out;
}

void record_manifest(const std::filesystem::path& output_dir, const std::string& output_name, const RunManifest& m) {
  const auto path = output_dir / kManifestFile;
  Json doc = std::filesystem::exists(path) ? read_json(path) : Json::object();
  if (!doc.is_object() || !doc.contains("outputs") || !doc["outputs"].is_object()) doc = Json{{"outputs", Json::object()}};
  doc["outputs"][output_name] = to_json(m);
  // Sorted keys keep the file independent of the order outputs were written.
  Json sorted = Json::object();
  std::map<std::string, Json> entries;
  for (const auto& [k, v] : doc["outputs"].items()) entries.emplace(k, v);
  for (auto& [k, v] : entries) sorted[k] = std::move(v);
  write_json(path, Json{{"outputs", std::move(sorted)}});
}

}  // namespace tokforge::config
