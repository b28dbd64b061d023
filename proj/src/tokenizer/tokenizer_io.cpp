#include "tokforge/tokenizer/tokenizer_io.hpp"

#include <charconv>

#include <fmt/format.h>

#include "tokforge/common/error.hpp"
#include "tokforge/common/escape.hpp"
#include "tokforge/common/io.hpp"

namespace tokforge::tokenizer {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string_view::npos ? std::string_view::npos : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

std::size_t parse_index(std::string_view field, std::size_t lineno, const char* what) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw Error(ErrorKind::validation, fmt::format("line {}: malformed {} '{}'", lineno, what, field));
  }
  return value;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t lineno = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++lineno;
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) fn(line, lineno);
    start = end + 1;
  }
}

}  // namespace

std::string format_vocab(const Vocabulary& vocab) {
  std::string out;
  for (std::size_t id = 0; id < vocab.size(); ++id) {
    out += escape_bytes(vocab.token(static_cast<TokenId>(id)));
    out += fmt::format("\t{}\n", id);
  }
  return out;
}

std::string format_merges(const MergeTable& merges) {
  std::string out;
  for (std::size_t rank = 0; rank < merges.size(); ++rank) {
    const Merge& m = merges[rank];
    out += fmt::format("{}\t{}\t{}\t{}\n", escape_bytes(m.left), escape_bytes(m.right), rank, to_string(m.origin));
  }
  return out;
}

Vocabulary parse_vocab(std::string_view text) {
  std::vector<std::string> tokens;
  for_each_line(text, [&](std::string_view line, std::size_t lineno) {
    const auto fields = split_fields(line);
    if (fields.size() != 2) throw Error(ErrorKind::validation, fmt::format("vocab line {}: expected 2 fields", lineno));
    const std::size_t id = parse_index(fields[1], lineno, "id");
    if (id != tokens.size()) {
      throw Error(ErrorKind::validation, fmt::format("vocab line {}: id {} breaks contiguity (expected {})", lineno, id, tokens.size()));
    }
    tokens.push_back(unescape_bytes(fields[0]));
  });
  return Vocabulary(std::move(tokens));
}

MergeTable parse_merges(std::string_view text) {
  std::vector<Merge> merges;
  for_each_line(text, [&](std::string_view line, std::size_t lineno) {
    const auto fields = split_fields(line);
    if (fields.size() != 4) throw Error(ErrorKind::validation, fmt::format("merges line {}: expected 4 fields", lineno));
    const std::size_t rank = parse_index(fields[2], lineno, "rank");
    if (rank != merges.size()) {
      throw Error(ErrorKind::validation, fmt::format("merges line {}: rank {} out of order", lineno, rank));
    }
    merges.push_back({unescape_bytes(fields[0]), unescape_bytes(fields[1]), merge_origin_from_string(fields[3])});
  });
  return MergeTable(std::move(merges));
}

void save_tokenizer(const std::filesystem::path& dir, const Vocabulary& vocab, const MergeTable& merges) {
  std::filesystem::create_directories(dir);
  write_file(dir / kVocabFile, format_vocab(vocab));
  write_file(dir / kMergesFile, format_merges(merges));
}

Vocabulary load_vocab(const std::filesystem::path& dir) { return parse_vocab(read_file(dir / kVocabFile)); }

Tokenizer load_tokenizer(const std::filesystem::path& dir) {
  MergeTable merges;
  if (std::filesystem::exists(dir / kMergesFile)) merges = parse_merges(read_file(dir / kMergesFile));
  return Tokenizer(load_vocab(dir), std::move(merges));
}

}  // namespace tokforge::tokenizer
