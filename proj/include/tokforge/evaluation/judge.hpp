#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tokforge/common/clock.hpp"
#include "tokforge/common/error.hpp"
#include "tokforge/common/retry.hpp"
#include "tokforge/conversation/chat_client.hpp"
#include "tokforge/evaluation/eval_set.hpp"

namespace tokforge::evaluation {

inline constexpr std::string_view kJudgeGoldTemplate = "judge_gold_v1.txt";
inline constexpr std::string_view kJudgeNoGoldTemplate = "judge_nogold_v1.txt";

/// What to do when a category that is judged against a reference has none.
enum class MissingGoldPolicy { warn, error };

struct JudgePrompt {
  std::string text;
  std::string template_name;
  std::optional<std::string> warning;
};

/// Categories judged without gold never see it, even if the sample carries
/// one. Throws Error(validation) for missing gold under MissingGoldPolicy::error.
[[nodiscard]] JudgePrompt build_judge_prompt(const EvalSample& sample, std::string_view response,
                                             MissingGoldPolicy policy = MissingGoldPolicy::warn);

/// The first decimal number in the reply. Throws Error(scoring_parse) when
/// there is none or it lies outside [0, 1].
[[nodiscard]] double parse_score(std::string_view reply);

struct JudgeParams {
  std::string judge_model = "gpt-3.5-turbo";
  double temperature = 0.0;
  int max_tokens = 256;
  MissingGoldPolicy missing_gold = MissingGoldPolicy::warn;
};

[[nodiscard]] Json to_json(const JudgeParams& params);

struct JudgeVerdict {
  std::string sample_id;
  std::string model;
  double score = 0.0;
  std::string raw;
  std::string judge_model;
  std::string ts;
  int retries = 0;
};

[[nodiscard]] Json to_json(const JudgeVerdict& v);
[[nodiscard]] JudgeVerdict verdict_from_json(const Json& j);

/// Thrown by judge(): carries the raw reply (empty after transport failure)
/// and the number of retries spent.
class JudgeError : public Error {
 public:
  JudgeError(ErrorKind kind, const std::string& message, std::string raw, int retries)
      : Error(kind, message), raw_(std::move(raw)), retries_(retries) {}

  [[nodiscard]] const std::string& raw() const noexcept { return raw_; }
  [[nodiscard]] int retries() const noexcept { return retries_; }

 private:
  std::string raw_;
  int retries_;
};

struct JudgeContext {
  conversation::ChatClient* client = nullptr;
  JudgeParams params;
  RetryPolicy retry;
  Sleeper sleep = real_sleeper();
  TimestampFn clock = system_clock_timestamps();
  RateLimiter* limiter = nullptr;
};

/// One judged response. The request tag is "<sample id>/<model>". Transport
/// errors are retried with backoff; a malformed reply is not retried. Throws
/// JudgeError(scoring_parse) or JudgeError(transport).
[[nodiscard]] JudgeVerdict judge(const EvalSample& sample, std::string_view model, std::string_view response,
                                 const JudgeContext& ctx);

struct ModelResponse {
  std::string sample_id;
  std::string model;
  std::string response;
};

/// {sample_id, model, response}
[[nodiscard]] std::vector<ModelResponse> load_responses(const std::filesystem::path& path);

struct JudgeFailure {
  std::string sample_id;
  std::string model;
  std::string kind;  // error kind name
  std::string message;
  std::string raw;
  int retries = 0;
};

[[nodiscard]] Json to_json(const JudgeFailure& f);

struct EvaluationResult {
  std::vector<JudgeVerdict> verdicts;  // input order
  std::vector<JudgeFailure> failures;  // input order
  std::vector<std::string> warnings;
};

/// Judges every response with up to `concurrency` requests in flight. Each
/// response ends up as exactly one verdict or one failure. Throws
/// Error(consistency) for a response naming an unknown sample.
[[nodiscard]] EvaluationResult evaluate(const std::vector<EvalSample>& samples, const std::vector<ModelResponse>& responses,
                                        const JudgeContext& ctx, std::size_t concurrency = 4);

}  // namespace tokforge::evaluation
