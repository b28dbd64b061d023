#include "tokforge/conversation/conversation.hpp"

#include <unordered_set>

#include <fmt/format.h>

#include "tokforge/common/error.hpp"

namespace tokforge::conversation {

std::string_view to_string(Role role) noexcept { return role == Role::human ? "human" : "assistant"; }

Role role_from_string(std::string_view name) {
  if (name == "human" || name == "user") return Role::human;
  if (name == "assistant" || name == "gpt" || name == "chatgpt" || name == "bot") return Role::assistant;
  throw Error(ErrorKind::validation, fmt::format("unknown role '{}'", name));
}

void validate(const Conversation& conv) {
  if (conv.turns.empty()) throw Error(ErrorKind::validation, fmt::format("conversation {} has no turns", conv.id));
  const Role first = conv.turns.front().role;
  if (first != Role::human && !conv.flags.context_loss) {
    throw Error(ErrorKind::validation, fmt::format("conversation {} does not start with a human turn", conv.id));
  }
  for (std::size_t i = 1; i < conv.turns.size(); ++i) {
    if (conv.turns[i].role == conv.turns[i - 1].role) {
      throw Error(ErrorKind::validation, fmt::format("conversation {}: turns {} and {} have the same role", conv.id, i - 1, i));
    }
  }
}

std::string joined_text(const Conversation& conv) {
  std::string out;
  for (const Turn& t : conv.turns) {
    if (!out.empty()) out += '\n';
    out += t.text;
  }
  return out;
}

namespace {

std::string string_field(const Json& j, const char* key, std::string_view what) {
  if (!j.contains(key) || !j[key].is_string()) throw Error(ErrorKind::validation, fmt::format("{} needs a string '{}'", what, key));
  return j[key].get<std::string>();
}

Turn turn_from_json(const Json& t) {
  if (!t.is_object()) throw Error(ErrorKind::validation, "turn must be an object");
  const char* role_key = t.contains("role") ? "role" : "from";
  const char* text_key = t.contains("text") ? "text" : "value";
  return Turn{role_from_string(string_field(t, role_key, "turn")), string_field(t, text_key, "turn")};
}

ConversationFlags flags_from_json(const Json& j) {
  ConversationFlags f;
  if (!j.is_object()) throw Error(ErrorKind::validation, "'flags' must be an object");
  f.truncated = j.value("truncated", false);
  f.context_loss = j.value("context_loss", false);
  f.context_turns = j.value("context_turns", 0);
  f.segment_index = j.value("segment_index", -1);
  f.parent_id = j.value("parent_id", std::string());
  return f;
}

}  // namespace

Conversation conversation_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorKind::validation, "conversation must be a JSON object");
  Conversation conv;
  conv.id = string_field(j, "id", "conversation");
  const char* turns_key = j.contains("turns") ? "turns" : "conversations";
  if (!j.contains(turns_key) || !j[turns_key].is_array()) {
    throw Error(ErrorKind::validation, fmt::format("conversation {} needs a 'turns' array", conv.id));
  }
  for (const Json& t : j[turns_key]) conv.turns.push_back(turn_from_json(t));
  conv.source = j.value("source", std::string());
  if (j.contains("flags")) conv.flags = flags_from_json(j["flags"]);
  conv.language = j.contains("language") ? language_from_string(j["language"].get<std::string>())
                                         : detect_language(joined_text(conv));
  validate(conv);
  return conv;
}

Json to_json(const Conversation& conv) {
  Json turns = Json::array();
  for (const Turn& t : conv.turns) turns.push_back(Json{{"role", to_string(t.role)}, {"text", t.text}});
  Json flags = Json::object();
  if (conv.flags.truncated) flags["truncated"] = true;
  if (conv.flags.context_loss) flags["context_loss"] = true;
  if (conv.flags.context_turns > 0) flags["context_turns"] = conv.flags.context_turns;
  if (conv.flags.segment_index >= 0) flags["segment_index"] = conv.flags.segment_index;
  if (!conv.flags.parent_id.empty()) flags["parent_id"] = conv.flags.parent_id;
  return Json{{"id", conv.id},
              {"source", conv.source},
              {"language", to_string(conv.language)},
              {"turns", std::move(turns)},
              {"flags", std::move(flags)}};
}

std::vector<Conversation> load_conversations(const std::filesystem::path& path) {
  std::vector<Conversation> convs;
  std::unordered_set<std::string> ids;
  for (const Json& j : read_jsonl(path)) {
    Conversation c = conversation_from_json(j);
    if (!ids.insert(c.id).second) throw Error(ErrorKind::validation, fmt::format("duplicate conversation id '{}'", c.id));
    convs.push_back(std::move(c));
  }
  return convs;
}

void save_conversations(const std::filesystem::path& path, const std::vector<Conversation>& convs) {
  std::vector<Json> records;
  records.reserve(convs.size());
  for (const Conversation& c : convs) records.push_back(to_json(c));
  write_jsonl(path, records);
}

}  // namespace tokforge::conversation
