#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "tokforge/common/io.hpp"
#include "tokforge/common/language.hpp"

namespace tokforge::conversation {

enum class Role { human, assistant };

[[nodiscard]] std::string_view to_string(Role role) noexcept;
/// Accepts human/user and assistant/gpt/chatgpt/bot (ShareGPT uses "gpt").
[[nodiscard]] Role role_from_string(std::string_view name);

struct Turn {
  Role role = Role::human;
  std::string text;

  bool operator==(const Turn&) const = default;
};

/// Flags set by cleaning. `context_turns` counts leading turns copied from the
/// previous segment; `context_loss` marks a segment that had to start with an
/// assistant turn.
struct ConversationFlags {
  bool truncated = false;
  bool context_loss = false;
  int context_turns = 0;
  int segment_index = -1;  // -1 when the conversation was not segmented
  std::string parent_id;

  bool operator==(const ConversationFlags&) const = default;
};

struct Conversation {
  std::string id;
  std::vector<Turn> turns;
  Language language = Language::other;
  std::string source;
  ConversationFlags flags;
};

/// Turns must be non-empty and alternate starting with human. The only
/// exception is a segment flagged context_loss, which starts with assistant.
/// Throws Error(validation).
void validate(const Conversation& conv);

/// All turn texts joined by newlines.
[[nodiscard]] std::string joined_text(const Conversation& conv);

/// Reads {id, source?, language?, turns:[{role, text}], flags?}. ShareGPT
/// records ({id, conversations:[{from, value}]}) are accepted too. Validates.
[[nodiscard]] Conversation conversation_from_json(const Json& j);
[[nodiscard]] Json to_json(const Conversation& conv);

[[nodiscard]] std::vector<Conversation> load_conversations(const std::filesystem::path& path);
void save_conversations(const std::filesystem::path& path, const std::vector<Conversation>& convs);

}  // namespace tokforge::conversation
