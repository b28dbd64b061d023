#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "tokforge/common/io.hpp"
#include "tokforge/common/language.hpp"

namespace tokforge::corpus {

struct Document {
  std::string id;
  std::string text;
  Json meta = Json::object();
  Language language = Language::other;
};

/// Accepts {id, text, meta?, language?}; a missing language is detected from the text.
[[nodiscard]] Document document_from_json(const Json& j);
[[nodiscard]] Json to_json(const Document& doc);

/// Loads a JSONL corpus. Throws Error(validation) on duplicate ids.
[[nodiscard]] std::vector<Document> load_documents(const std::filesystem::path& path);
void save_documents(const std::filesystem::path& path, const std::vector<Document>& docs);

/// Per-stage accounting: input = output + removed.
struct StageReport {
  std::string stage;
  std::size_t input = 0;
  std::size_t output = 0;
  std::size_t removed = 0;
};

struct FilterResult {
  std::vector<Document> kept;
  StageReport report;
};

}  // namespace tokforge::corpus
