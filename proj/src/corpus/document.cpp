#include "tokforge/corpus/document.hpp"

#include <unordered_set>

#include <fmt/format.h>

#include "tokforge/common/error.hpp"

namespace tokforge::corpus {

Document document_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("id") || !j.contains("text") || !j["id"].is_string() || !j["text"].is_string()) {
    throw Error(ErrorKind::validation, "document needs string fields 'id' and 'text'");
  }
  Document doc;
  doc.id = j["id"].get<std::string>();
  doc.text = j["text"].get<std::string>();
  if (j.contains("meta")) {
    if (!j["meta"].is_object()) throw Error(ErrorKind::validation, fmt::format("document {}: 'meta' must be an object", doc.id));
    doc.meta = j["meta"];
  }
  doc.language = j.contains("language") ? language_from_string(j["language"].get<std::string>()) : detect_language(doc.text);
  return doc;
}

Json to_json(const Document& doc) {
  return Json{{"id", doc.id}, {"text", doc.text}, {"meta", doc.meta}, {"language", to_string(doc.language)}};
}

std::vector<Document> load_documents(const std::filesystem::path& path) {
  std::vector<Document> docs;
  std::unordered_set<std::string> ids;
  for (const Json& j : read_jsonl(path)) {
    Document doc = document_from_json(j);
    if (!ids.insert(doc.id).second) throw Error(ErrorKind::validation, fmt::format("duplicate document id '{}'", doc.id));
    docs.push_back(std::move(doc));
  }
  return docs;
}

void save_documents(const std::filesystem::path& path, const std::vector<Document>& docs) {
  std::vector<Json> records;
  records.reserve(docs.size());
  for (const Document& d : docs) records.push_back(to_json(d));
  write_jsonl(path, records);
}

}  // namespace tokforge::corpus
