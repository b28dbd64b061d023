#include "tokforge/conversation/cleaning.hpp"

#include <fmt/format.h>

#include "tokforge/common/error.hpp"
#include "tokforge/common/parallel.hpp"
#include "tokforge/common/text.hpp"

namespace tokforge::conversation {

Language detect_conversation_language(const Conversation& conv, const LanguageThresholds& thresholds) {
  return detect_language(joined_text(conv), thresholds);
}

ConversationFilterResult filter_languages(std::vector<Conversation> convs, const std::set<Language>& keep,
                                          const LanguageThresholds& thresholds) {
  const bool keep_mixed = keep.contains(Language::mixed) || keep.contains(Language::zh) || keep.contains(Language::en);
  ConversationFilterResult result;
  result.report.stage = "language_filter";
  result.report.input = convs.size();
  for (Conversation& c : convs) {
    c.language = detect_conversation_language(c, thresholds);
    const bool ok = c.language == Language::mixed ? keep_mixed : keep.contains(c.language);
    if (ok) result.kept.push_back(std::move(c));
  }
  result.report.output = result.kept.size();
  result.report.removed = result.report.input - result.report.output;
  return result;
}

TokenCounter counter_for(const tokenizer::Tokenizer& tok) {
  return [&tok](std::string_view s) { return tok.count_tokens(s); };
}

std::string truncate_to_tokens(std::string_view text, std::size_t max_tokens, const TokenCounter& count) {
  if (count(text) <= max_tokens) return std::string(text);
  // Byte offsets of code point boundaries; binary search keeps only prefixes
  // that were actually measured to fit.
  std::vector<std::size_t> cuts{0};
  for (std::size_t i = 1; i <= text.size(); ++i) {
    if (i == text.size() || (static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) cuts.push_back(i);
  }
  std::size_t lo = 0;
  std::size_t hi = cuts.size() - 1;  // known not to fit
  while (hi - lo > 1) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (count(text.substr(0, cuts[mid])) <= max_tokens) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return std::string(text.substr(0, cuts[lo]));
}

std::vector<Conversation> segment(const Conversation& conv, std::size_t max_tokens, const TokenCounter& count) {
  if (max_tokens < 1) throw Error(ErrorKind::parameter, "max_tokens must be at least 1");
  std::vector<std::size_t> cost;
  cost.reserve(conv.turns.size());
  std::size_t total = 0;
  for (const Turn& t : conv.turns) {
    cost.push_back(count(t.text));
    total += cost.back();
  }
  if (total <= max_tokens) return {conv};

  std::vector<Conversation> out;
  const std::size_t n = conv.turns.size();
  std::size_t i = 0;
  while (i < n) {
    Conversation seg;
    seg.id = fmt::format("{}_seg{}", conv.id, out.size());
    seg.language = conv.language;
    seg.source = conv.source;
    seg.flags = conv.flags;
    seg.flags.segment_index = static_cast<int>(out.size());
    seg.flags.parent_id = conv.id;
    seg.flags.context_turns = 0;
    seg.flags.context_loss = false;
    seg.flags.truncated = false;
    std::size_t used = 0;

    if (conv.turns[i].role == Role::assistant && i > 0) {
      const std::size_t own = std::min(cost[i], max_tokens);
      if (cost[i - 1] + own <= max_tokens) {
        seg.turns.push_back(conv.turns[i - 1]);
        used = cost[i - 1];
        seg.flags.context_turns = 1;
      } else {
        seg.flags.context_loss = true;
      }
    }
    const std::size_t first = i;
    while (i < n && used + cost[i] <= max_tokens) {
      seg.turns.push_back(conv.turns[i]);
      used += cost[i];
      ++i;
    }
    if (i == first) {
      // Oversized turn: it cannot share a segment, so it is cut to the budget.
      seg.turns.push_back(Turn{conv.turns[i].role, truncate_to_tokens(conv.turns[i].text, max_tokens - used, count)});
      seg.flags.truncated = true;
      ++i;
    }
    out.push_back(std::move(seg));
  }
  return out;
}

std::vector<Conversation> segment(const Conversation& conv, std::size_t max_tokens, const tokenizer::Tokenizer& tok) {
  return segment(conv, max_tokens, counter_for(tok));
}

SegmentationResult segment_all(const std::vector<Conversation>& convs, std::size_t max_tokens, const TokenCounter& count,
                               std::size_t threads) {
  std::vector<std::vector<Conversation>> parts(convs.size());
  parallel_for(convs.size(), threads, [&](std::size_t i) { parts[i] = segment(convs[i], max_tokens, count); });
  SegmentationResult result;
  result.report.input_conversations = convs.size();
  for (auto& p : parts) {
    for (Conversation& c : p) {
      result.report.truncated_turns += c.flags.truncated ? 1 : 0;
      result.report.context_loss_segments += c.flags.context_loss ? 1 : 0;
      result.segments.push_back(std::move(c));
    }
  }
  result.report.output_segments = result.segments.size();
  return result;
}

Json to_json(const SegmentationReport& report) {
  return Json{{"input_conversations", report.input_conversations},
              {"output_segments", report.output_segments},
              {"truncated_turns", report.truncated_turns},
              {"context_loss_segments", report.context_loss_segments}};
}

}  // namespace tokforge::conversation
