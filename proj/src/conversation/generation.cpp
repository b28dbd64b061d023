#include "tokforge/conversation/generation.hpp"

#include <optional>

#include <fmt/format.h>

#include "tokforge/common/error.hpp"
#include "tokforge/common/parallel.hpp"
#include "tokforge/common/resources.hpp"

namespace tokforge::conversation {

void GenerationParams::validate() const {
  if (!(temperature >= 0.0)) throw Error(ErrorKind::parameter, "temperature must be >= 0");
  if (max_new_tokens < 1) throw Error(ErrorKind::parameter, "max_new_tokens must be positive");
}

Json to_json(const GenerationParams& params) {
  return Json{{"model", params.model},
              {"endpoint", params.endpoint},
              {"temperature", params.temperature},
              {"max_new_tokens", params.max_new_tokens}};
}

std::string seed_prompt(std::string_view first_turn, int turns) {
  if (first_turn.find_first_not_of(" \t\r\n") == std::string_view::npos) {
    throw Error(ErrorKind::input, "seed turn is empty");
  }
  if (turns < 2) throw Error(ErrorKind::parameter, "a generated dialogue needs at least 2 turns");
  const std::string n = std::to_string(turns);
  return render_template(resource(kSeedPromptTemplate), {{"turns", n}, {"seed", first_turn}});
}

namespace {

std::optional<std::pair<Role, std::string_view>> marker(std::string_view line) {
  constexpr std::string_view human = "Human:";
  constexpr std::string_view assistant = "Assistant:";
  if (line.starts_with(human)) return std::pair{Role::human, line.substr(human.size())};
  if (line.starts_with(assistant)) return std::pair{Role::assistant, line.substr(assistant.size())};
  return std::nullopt;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

}  // namespace

std::vector<Turn> parse_dialogue(std::string_view raw) {
  std::vector<Turn> turns;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= raw.size()) {
    const auto end = std::min(raw.find('\n', pos), raw.size());
    const std::string_view line = raw.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (trim(line).empty()) continue;
    if (const auto m = marker(trim(line))) {
      const Role expected = turns.empty() || turns.back().role == Role::assistant ? Role::human : Role::assistant;
      if (m->first != expected) {
        throw Error(ErrorKind::validation, fmt::format("line {}: expected a {} turn", line_no, to_string(expected)));
      }
      turns.push_back(Turn{m->first, std::string(trim(m->second))});
    } else {
      if (turns.empty()) throw Error(ErrorKind::validation, fmt::format("line {}: text before the first role marker", line_no));
      std::string& text = turns.back().text;
      if (!text.empty()) text += '\n';
      text += trim(line);
    }
  }
  for (std::size_t i = 0; i < turns.size(); ++i) {
    if (turns[i].text.empty()) throw Error(ErrorKind::validation, fmt::format("turn {} is empty", i));
  }
  if (turns.size() < 2) throw Error(ErrorKind::validation, fmt::format("found {} turn(s), need at least 2", turns.size()));
  return turns;
}

std::vector<Seed> load_seeds(const std::filesystem::path& path) {
  std::vector<Seed> seeds;
  for (const Json& j : read_jsonl(path)) {
    if (j.contains("text")) {
      seeds.push_back({j.at("id").get<std::string>(), j["text"].get<std::string>()});
    } else {
      const Conversation c = conversation_from_json(j);
      seeds.push_back({c.id, c.turns.front().text});
    }
  }
  return seeds;
}

Json to_json(const GenerationFailure& failure) {
  return Json{{"seed_id", failure.seed_id},
              {"kind", failure.kind},
              {"message", failure.message},
              {"raw", failure.raw},
              {"attempts", failure.attempts}};
}

GenerationResult generate_conversations(const std::vector<Seed>& seeds, ChatClient& client, const GenerationParams& params,
                                        int turns_target, const GenerationOptions& options) {
  if (seeds.empty()) throw Error(ErrorKind::input, "no seeds given");
  params.validate();
  RateLimiter limiter(options.requests_per_second);

  std::vector<std::optional<Conversation>> convs(seeds.size());
  std::vector<std::optional<GenerationFailure>> failures(seeds.size());
  parallel_for(seeds.size(), options.concurrency, [&](std::size_t i) {
    const Seed& seed = seeds[i];
    ChatRequest request;
    request.messages = {{"user", seed_prompt(seed.text, turns_target)}};
    request.model = params.model;
    request.temperature = params.temperature;
    request.max_tokens = params.max_new_tokens;
    request.tag = seed.id;
    int retries = 0;
    std::string raw;
    try {
      raw = with_retries(options.retry, options.sleep, retries, [&](int attempt) {
        limiter.acquire();
        ChatRequest r = request;
        r.attempt = attempt;
        return client.complete(r);
      });
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::transport) throw;
      failures[i] = GenerationFailure{seed.id, "transport", e.what(), "", retries + 1};
      return;
    }
    try {
      Conversation c;
      c.id = seed.id;
      c.turns = parse_dialogue(raw);
      c.source = "generated:" + params.model;
      c.language = detect_language(joined_text(c));
      convs[i] = std::move(c);
    } catch (const Error& e) {
      failures[i] = GenerationFailure{seed.id, "parse", e.what(), raw, retries + 1};
    }
  });

  GenerationResult result;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (convs[i]) result.conversations.push_back(std::move(*convs[i]));
    if (failures[i]) result.failures.push_back(std::move(*failures[i]));
  }
  return result;
}

}  // namespace tokforge::conversation
