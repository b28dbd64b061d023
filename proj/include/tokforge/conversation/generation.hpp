#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "tokforge/common/clock.hpp"
#include "tokforge/common/retry.hpp"
#include "tokforge/conversation/chat_client.hpp"
#include "tokforge/conversation/conversation.hpp"

namespace tokforge::conversation {

inline constexpr double kDefaultTemperature = 0.001;
inline constexpr double kDiversityTemperature = 0.5;
inline constexpr std::string_view kSeedPromptTemplate = "seed_prompt_v1.txt";

struct GenerationParams {
  double temperature = kDefaultTemperature;
  int max_new_tokens = 2048;
  std::string model = "gpt-3.5-turbo";
  std::string endpoint;

  /// Throws Error(parameter) for a negative temperature or non-positive max_new_tokens.
  void validate() const;
};

[[nodiscard]] Json to_json(const GenerationParams& params);

/// Fills the versioned seed template. Throws Error(input) for an empty seed
/// and Error(parameter) for turns < 2.
[[nodiscard]] std::string seed_prompt(std::string_view first_turn, int turns = 6);

/// Parses generator output made of "Human:" / "Assistant:" lines. Lines without
/// a marker continue the previous turn. Throws Error(validation) when text precedes the first marker, roles do not
/// alternate from Human, a turn is empty, or fewer than two turns are found.
[[nodiscard]] std::vector<Turn> parse_dialogue(std::string_view raw);

struct Seed {
  std::string id;
  std::string text;
};

/// Accepts {id, text} records or conversations (their first human turn).
[[nodiscard]] std::vector<Seed> load_seeds(const std::filesystem::path& path);

struct GenerationFailure {
  std::string seed_id;
  std::string kind;  // "transport" or "parse"
  std::string message;
  std::string raw;   // generator output, empty for transport failures
  int attempts = 0;
};

[[nodiscard]] Json to_json(const GenerationFailure& failure);

struct GenerationOptions {
  RetryPolicy retry;
  Sleeper sleep = real_sleeper();
  std::size_t concurrency = 4;
  double requests_per_second = 0.0;  // 0 disables rate limiting
};

struct GenerationResult {
  std::vector<Conversation> conversations;  // seed order
  std::vector<GenerationFailure> failures;  // seed order
};

/// One request per seed; retries transport failures per options.retry. Output
/// that does not parse is logged with the raw text, never dropped silently.
/// Throws Error(input) when seeds is empty.
[[nodiscard]] GenerationResult generate_conversations(const std::vector<Seed>& seeds, ChatClient& client,
                                                      const GenerationParams& params, int turns_target,
                                                      const GenerationOptions& options = {});

}  // namespace tokforge::conversation
