#pragma once

#include <functional>
#include <set>
#include <string_view>
#include <vector>

#include "tokforge/conversation/conversation.hpp"
#include "tokforge/corpus/document.hpp"
#include "tokforge/tokenizer/bpe_tokenizer.hpp"

namespace tokforge::conversation {

/// Language of the concatenated turns.
[[nodiscard]] Language detect_conversation_language(const Conversation& conv, const LanguageThresholds& thresholds = {});

struct ConversationFilterResult {
  std::vector<Conversation> kept;
  corpus::StageReport report;
};

/// Keeps conversations whose detected language is in `keep`. A mixed
/// conversation is kept when zh or en is in `keep`. Kept conversations carry
/// the detected language.
[[nodiscard]] ConversationFilterResult filter_languages(std::vector<Conversation> convs, const std::set<Language>& keep,
                                                        const LanguageThresholds& thresholds = {});

using TokenCounter = std::function<std::size_t(std::string_view)>;

[[nodiscard]] TokenCounter counter_for(const tokenizer::Tokenizer& tok);

/// Longest code-point prefix of `text` whose token count is at most max_tokens.
[[nodiscard]] std::string truncate_to_tokens(std::string_view text, std::size_t max_tokens, const TokenCounter& count);

/// Greedy whole-turn packing. Each segment holds as many consecutive turns as
/// fit in max_tokens. A turn that alone exceeds the budget becomes its own
/// segment, truncated and flagged. A segment that would start with an assistant
/// turn gets the preceding human turn copied in front when both fit
/// (context_turns = 1); otherwise it starts with the assistant turn and is
/// flagged context_loss. A conversation that fits is returned unchanged.
/// Throws Error(parameter) if max_tokens < 1.
[[nodiscard]] std::vector<Conversation> segment(const Conversation& conv, std::size_t max_tokens, const TokenCounter& count);
[[nodiscard]] std::vector<Conversation> segment(const Conversation& conv, std::size_t max_tokens,
                                                const tokenizer::Tokenizer& tok);

struct SegmentationReport {
  std::size_t input_conversations = 0;
  std::size_t output_segments = 0;
  std::size_t truncated_turns = 0;
  std::size_t context_loss_segments = 0;
};

struct SegmentationResult {
  std::vector<Conversation> segments;
  SegmentationReport report;
};

[[nodiscard]] SegmentationResult segment_all(const std::vector<Conversation>& convs, std::size_t max_tokens,
                                             const TokenCounter& count, std::size_t threads = 1);

[[nodiscard]] Json to_json(const SegmentationReport& report);

}  // namespace tokforge::conversation
