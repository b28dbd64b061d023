#include "tokforge/config/datasets.hpp"

#include <algorithm>

#include <fmt/format.h>

#include "tokforge/common/error.hpp"

namespace tokforge::config {

DatasetRegistry DatasetRegistry::builtin() {
  DatasetRegistry r;
  r.add({"alpaca-3.5-en", "alpaca-3.5", Language::en, "52K self-instruct samples answered by text-davinci-003", 52000});
  r.add({"alpaca-3.5-zh", "alpaca-3.5", Language::zh, "Chinese translation of alpaca-3.5-en", 52000});
  r.add({"alpaca-4-en", "alpaca-4", Language::en, "alpaca instructions answered by GPT-4", 52000});
  r.add({"alpaca-4-zh", "alpaca-4", Language::zh, "translated alpaca instructions answered by GPT-4 in Chinese", 52000});
  r.add({"sharegpt", "sharegpt", std::nullopt, "user-shared ChatGPT conversations", 8300});
  r.add({"belle-3.5", "belle-3.5", Language::zh, "instruction samples and multi-turn conversations", 500000});
  return r;
}

void DatasetRegistry::add(DatasetInfo info) {
  if (find(info.name) != nullptr) throw Error(ErrorKind::config, fmt::format("dataset '{}' registered twice", info.name));
  datasets_.push_back(std::move(info));
}

const DatasetInfo* DatasetRegistry::find(std::string_view name) const {
  const auto it = std::find_if(datasets_.begin(), datasets_.end(), [&](const DatasetInfo& d) { return d.name == name; });
  return it == datasets_.end() ? nullptr : &*it;
}

const DatasetInfo& DatasetRegistry::version(Language lang, std::string_view family) const {
  for (const DatasetInfo& d : datasets_) {
    if (d.family == family && d.language == lang) return d;
  }
  throw Error(ErrorKind::config, fmt::format("no {} version of dataset '{}'", to_string(lang), family));
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

std::vector<const DatasetInfo*> DatasetRegistry::resolve_mixture(std::string_view expression) const {
  std::vector<const DatasetInfo*> out;
  auto push = [&](const DatasetInfo* d) {
    if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
  };
  for (std::string_view term : split(expression, '+')) {
    if (term.empty()) throw Error(ErrorKind::config, fmt::format("empty term in mixture '{}'", expression));
    const auto open = term.find('(');
    if (open == std::string_view::npos) {
      const DatasetInfo* d = find(term);
      if (d == nullptr) throw Error(ErrorKind::config, fmt::format("unknown dataset '{}'", term));
      push(d);
      continue;
    }
    if (term.back() != ')') throw Error(ErrorKind::config, fmt::format("unbalanced parentheses in '{}'", term));
    const Language lang = language_from_string(trim(term.substr(0, open)));
    const auto alternatives = split(term.substr(open + 1, term.size() - open - 2), '&');
    const std::string_view first = alternatives.front();
    const auto dash = first.rfind('-');
    for (std::string_view alt : alternatives) {
      if (alt.empty()) throw Error(ErrorKind::config, fmt::format("empty alternative in '{}'", term));
      const std::string family = alt.find('-') == std::string_view::npos && dash != std::string_view::npos
                                     ? std::string(first.substr(0, dash + 1)) + std::string(alt)
                                     : std::string(alt);
      push(&version(lang, family));
    }
  }
  return out;
}

Json to_json(const DatasetInfo& info) {
  return Json{{"name", info.name},
              {"family", info.family},
              {"language", info.language ? Json(to_string(*info.language)) : Json(nullptr)},
              {"description", info.description},
              {"samples", info.samples}};
}

}  // namespace tokforge::config
