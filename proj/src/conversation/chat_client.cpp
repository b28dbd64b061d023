#include "tokforge/conversation/chat_client.hpp"

#include <cstdlib>

#include <fmt/format.h>
#include <httplib.h>

#include "tokforge/common/error.hpp"
#include "tokforge/common/hash.hpp"

namespace tokforge::conversation {

Json to_json(const ChatRequest& request) {
  Json messages = Json::array();
  for (const ChatMessage& m : request.messages) messages.push_back(Json{{"role", m.role}, {"content", m.content}});
  return Json{{"model", request.model},
              {"messages", std::move(messages)},
              {"temperature", request.temperature},
              {"max_tokens", request.max_tokens}};
}

HttpChatClient::HttpChatClient(std::string url, std::string api_key_env, std::chrono::seconds timeout)
    : timeout_(timeout) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw Error(ErrorKind::config, fmt::format("endpoint '{}' is not a URL", url));
  const auto path_start = url.find('/', scheme_end + 3);
  scheme_host_ = url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/" : url.substr(path_start);
  if (!api_key_env.empty()) {
    if (const char* key = std::getenv(api_key_env.c_str())) api_key_ = key;
  }
}

std::string HttpChatClient::complete(const ChatRequest& request) {
  httplib::Client client(scheme_host_);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  httplib::Headers headers;
  if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
  const auto res = client.Post(path_, headers, to_json(request).dump(), "application/json");
  if (!res) throw Error(ErrorKind::transport, fmt::format("request failed: {}", httplib::to_string(res.error())));
  if (res->status == 429 || res->status >= 500) {
    throw Error(ErrorKind::transport, fmt::format("endpoint returned HTTP {}", res->status));
  }
  if (res->status != 200) throw Error(ErrorKind::io, fmt::format("endpoint returned HTTP {}: {}", res->status, res->body));
  try {
    const Json body = Json::parse(res->body);
    return body.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::io, fmt::format("unexpected response body: {}", e.what()));
  }
}

ScriptedChatClient::ScriptedChatClient(Json script) : script_(std::move(script)) {
  if (!script_.is_object()) throw Error(ErrorKind::config, "mock script must be a JSON object");
  if (script_.contains("faults")) {
    const Json& f = script_["faults"];
    fault_seed_ = f.value("seed", std::uint64_t{0});
    transport_rate_ = f.value("transport_failure_rate", 0.0);
    malformed_rate_ = f.value("malformed_rate", 0.0);
    if (transport_rate_ < 0 || transport_rate_ > 1 || malformed_rate_ < 0 || malformed_rate_ > 1) {
      throw Error(ErrorKind::config, "mock fault rates must lie in [0, 1]");
    }
  }
}

std::string ScriptedChatClient::complete(const ChatRequest& request) {
  std::string reply = script_.value("default_reply", std::string());
  if (script_.contains("replies") && script_["replies"].contains(request.tag)) {
    const Json& list = script_["replies"][request.tag];
    if (list.is_string()) {
      reply = list.get<std::string>();
    } else if (list.is_array() && !list.empty()) {
      const auto idx = std::min<std::size_t>(static_cast<std::size_t>(request.attempt), list.size() - 1);
      reply = list[idx].get<std::string>();
    }
  }
  Outcome outcome = reply == kTransportMarker ? Outcome::transport_failure : Outcome::reply;
  if (outcome == Outcome::reply && (transport_rate_ > 0 || malformed_rate_ > 0)) {
    const std::uint64_t h = splitmix64(fault_seed_ ^ fnv1a64(request.tag) ^ splitmix64(static_cast<std::uint64_t>(request.attempt)));
    if (unit_interval(h) < transport_rate_) {
      outcome = Outcome::transport_failure;
    } else if (unit_interval(splitmix64(h)) < malformed_rate_) {
      outcome = Outcome::malformed;
      reply = std::string(kMalformedReply);
    }
  }
  {
    std::lock_guard lock(mutex_);
    calls_.push_back({request.tag, request.attempt, outcome});
    requests_.push_back(request);
  }
  if (outcome == Outcome::transport_failure) {
    throw Error(ErrorKind::transport, fmt::format("injected transport failure (tag {}, attempt {})", request.tag, request.attempt));
  }
  return reply;
}

std::vector<ScriptedChatClient::CallRecord> ScriptedChatClient::calls() const {
  std::lock_guard lock(mutex_);
  return calls_;
}

std::vector<ChatRequest> ScriptedChatClient::requests() const {
  std::lock_guard lock(mutex_);
  return requests_;
}

std::unique_ptr<ChatClient> make_chat_client(const std::string& endpoint) {
  if (endpoint.starts_with("mock:")) {
    const std::string path = endpoint.substr(5);
    return std::make_unique<ScriptedChatClient>(path.empty() ? Json::object() : read_json(path));
  }
  return std::make_unique<HttpChatClient>(endpoint);
}

}  // namespace tokforge::conversation
