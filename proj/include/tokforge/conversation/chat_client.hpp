#pragma once

#include <chrono>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "tokforge/common/io.hpp"

namespace tokforge::conversation {

struct ChatMessage {
  std::string role;  // "system", "user" or "assistant"
  std::string content;
};

struct ChatRequest {
  std::vector<ChatMessage> messages;
  std::string model;
  double temperature = 0.0;
  int max_tokens = 1024;
  std::string tag;  // caller-chosen key (seed or sample id); mocks use it to pick replies
  int attempt = 0;  // 0 for the first try, incremented on each retry
};

[[nodiscard]] Json to_json(const ChatRequest& request);

/// Chat-completion backend. complete() throws Error(transport) for failures
/// worth retrying. Implementations must be safe to call concurrently.
class ChatClient {
 public:
  virtual ~ChatClient() = default;
  [[nodiscard]] virtual std::string complete(const ChatRequest& request) = 0;
};

/// OpenAI-style POST {model, messages, temperature, max_tokens} to a
/// chat-completions URL. The bearer token is read from `api_key_env` when set.
class HttpChatClient final : public ChatClient {
 public:
  explicit HttpChatClient(std::string url, std::string api_key_env = "TOKFORGE_API_KEY",
                          std::chrono::seconds timeout = std::chrono::seconds{120});

  [[nodiscard]] std::string complete(const ChatRequest& request) override;

 private:
  std::string scheme_host_;
  std::string path_;
  std::string api_key_;
  std::chrono::seconds timeout_;
};

/// Deterministic offline client. Script format:
///   {"default_reply": "...",
///    "replies": {"<tag>": ["reply for attempt 0", "reply for attempt 1", ...]},
///    "faults": {"seed": 1, "transport_failure_rate": 0.2, "malformed_rate": 0.05}}
/// A reply "!transport" raises a transport error for that attempt. The last
/// listed reply repeats for later attempts. Faults are drawn from a hash of
/// (seed, tag, attempt), so outcomes do not depend on call order. Every call
/// is appended to an in-memory log.
class ScriptedChatClient final : public ChatClient {
 public:
  static constexpr std::string_view kTransportMarker = "!transport";
  static constexpr std::string_view kMalformedReply = "I am unable to follow the requested format.";

  explicit ScriptedChatClient(Json script);

  [[nodiscard]] std::string complete(const ChatRequest& request) override;

  enum class Outcome { reply, transport_failure, malformed };
  struct CallRecord {
    std::string tag;
    int attempt = 0;
    Outcome outcome = Outcome::reply;
  };

  [[nodiscard]] std::vector<CallRecord> calls() const;
  [[nodiscard]] std::vector<ChatRequest> requests() const;

 private:
  Json script_;
  std::uint64_t fault_seed_ = 0;
  double transport_rate_ = 0.0;
  double malformed_rate_ = 0.0;
  mutable std::mutex mutex_;
  std::vector<CallRecord> calls_;
  std::vector<ChatRequest> requests_;
};

/// "mock:<path to script>" or "mock:" gives a ScriptedChatClient; anything
/// else is treated as an HTTP URL.
[[nodiscard]] std::unique_ptr<ChatClient> make_chat_client(const std::string& endpoint);

}  // namespace tokforge::conversation
