#include <doctest.h>

#include <algorithm>
#include <random>

#include "jaccard_oracle.hpp"
#include "tokforge/evaluation/eval_set.hpp"
#include "tokforge/evaluation/judge.hpp"
#include "tokforge/evaluation/report.hpp"

using namespace tokforge;
using namespace tokforge::evaluation;
using conversation::ScriptedChatClient;

namespace {

using Means = std::array<double, kCategoryCount>;

// One sample per category, scored with that category's mean.
std::vector<ScoreReport> aggregate_row(const Means& means) {
  std::vector<EvalSample> set;
  std::vector<JudgeVerdict> verdicts;
  for (std::size_t c = 0; c < kCategoryCount; ++c) {
    set.push_back(make_sample("s" + std::to_string(c), "q", to_string(kCategories[c]), "g"));
    verdicts.push_back({set.back().id, "m", means[c], "", "judge", "", 0});
  }
  return aggregate(verdicts, set);
}

JudgeContext quiet_context(conversation::ChatClient& client) {
  JudgeContext ctx;
  ctx.client = &client;
  ctx.sleep = [](std::chrono::milliseconds) {};
  ctx.clock = fixed_timestamps();
  return ctx;
}

}  // namespace

TEST_CASE("reclassify") {
  CHECK(reclassify("math") == Category::others);
  CHECK(reclassify("code") == Category::others);
  CHECK(reclassify("rewrite") == Category::rewrite);
  for (Category c : kCategories) CHECK(reclassify(to_string(c)) == c);
  CHECK_THROWS_AS((void)reclassify("riddle"), Error);
  CHECK_FALSE(make_sample("a", "q", "brainstorming", "gold").gold.has_value());
  CHECK(make_sample("a", "q", "closed_qa", "gold").gold == "gold");
  const auto s = eval_sample_from_json(Json::parse(R"({"id":"x","instruction":"1+1?","category":"math","gold":"2"})"));
  CHECK(s.category == Category::others);
  CHECK(s.gold == "2");
}

TEST_CASE("judge prompts hide gold exactly for rewrite, generation and brainstorming") {
  for (Category c : kCategories) {
    // Built directly so the gold survives into the sample.
    const EvalSample s{"id", "INSTRUCTION-TEXT", c, "GOLD-ANSWER-TEXT"};
    const auto p = build_judge_prompt(s, "RESPONSE-TEXT");
    const bool has_gold = p.text.find("GOLD-ANSWER-TEXT") != std::string::npos;
    CHECK(has_gold == uses_gold(c));
    CHECK(p.text.find("INSTRUCTION-TEXT") != std::string::npos);
    CHECK(p.text.find("RESPONSE-TEXT") != std::string::npos);
    CHECK(p.text == build_judge_prompt(s, "RESPONSE-TEXT").text);
  }
  const EvalSample missing{"id", "q", Category::closed_qa, std::nullopt};
  const auto warned = build_judge_prompt(missing, "r");
  CHECK(warned.warning.has_value());
  CHECK(warned.template_name == kJudgeNoGoldTemplate);
  CHECK_THROWS_AS((void)build_judge_prompt(missing, "r", MissingGoldPolicy::error), Error);
}

TEST_CASE("parse_score") {
  CHECK(parse_score("0.75") == 0.75);
  CHECK(parse_score("Score: 0.9\nThe answer is accurate.") == 0.9);
  CHECK(parse_score("1") == 1.0);
  CHECK(parse_score("score .5 out of 1") == 0.5);
  CHECK(parse_score("0.8/1") == 0.8);
  for (const char* bad : {"Score: 1.2", "no score here", "", "-0.3", "8/10"}) {
    try {
      (void)parse_score(bad);
      FAIL("expected parse error for " << bad);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::scoring_parse);
    }
  }
}

TEST_CASE("judge with scripted clients") {
  const auto sample = make_sample("s1", "name a colour", "open_qa", "blue");
  ScriptedChatClient plain(Json{{"default_reply", "0.75"}});
  const auto v = judge(sample, "m", "red", quiet_context(plain));
  CHECK(v.score == 0.75);
  CHECK(v.raw == "0.75");
  CHECK(v.retries == 0);
  CHECK(plain.requests().at(0).temperature == 0.0);

  ScriptedChatClient high(Json{{"default_reply", "Score: 1.2"}});
  try {
    (void)judge(sample, "m", "red", quiet_context(high));
    FAIL("expected parse error");
  } catch (const JudgeError& e) {
    CHECK(e.kind() == ErrorKind::scoring_parse);
    CHECK(e.raw() == "Score: 1.2");
  }

  ScriptedChatClient flaky(Json{{"replies", {{"s1/m", {"!transport", "!transport", "0.5"}}}}});
  auto ctx = quiet_context(flaky);
  std::vector<std::chrono::milliseconds> sleeps;
  ctx.sleep = [&](std::chrono::milliseconds d) { sleeps.push_back(d); };
  const auto after = judge(sample, "m", "red", ctx);
  CHECK(after.score == 0.5);
  CHECK(after.retries == 2);
  CHECK(sleeps == std::vector<std::chrono::milliseconds>{std::chrono::milliseconds{500}, std::chrono::milliseconds{1000}});

  ScriptedChatClient down(Json{{"default_reply", "!transport"}});
  try {
    (void)judge(sample, "m", "red", quiet_context(down));
    FAIL("expected transport error");
  } catch (const JudgeError& e) {
    CHECK(e.kind() == ErrorKind::transport);
    CHECK(e.retries() == 3);
  }
  CHECK(down.calls().size() == 4);
}

TEST_CASE("aggregate reproduces published rows") {
  const auto chatgpt = aggregate_row({0.875, 0.861, 0.813, 0.971, 0.795, 0.767, 0.690, 0.944, 0.751});
  REQUIRE(chatgpt.size() == 1);
  CHECK(std::abs(chatgpt[0].macro_ave - 0.830) <= 0.0005);
  CHECK(std::abs(chatgpt[0].macro_ave_wo_others - 0.824) <= 0.0005);

  const auto ext = aggregate_row({0.419, 0.858, 0.655, 0.897, 0.663, 0.456, 0.422, 0.837, 0.577});
  CHECK(ext[0].macro_ave == doctest::Approx(5.784 / 9).epsilon(1e-12));
  CHECK(ext[0].macro_ave_wo_others == doctest::Approx(5.365 / 8).epsilon(1e-12));

  const auto ones = aggregate_row({1, 1, 1, 1, 1, 1, 1, 1, 1});
  CHECK(ones[0].macro_ave == 1.0);
  CHECK(ones[0].macro_ave_wo_others == 1.0);
  for (const auto& m : ones[0].means) CHECK(m == 1.0);
}

TEST_CASE("aggregate is order independent and self-consistent") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> score(0.0, 1.0);
  std::vector<EvalSample> set;
  std::vector<JudgeVerdict> verdicts;
  for (int i = 0; i < 300; ++i) {
    set.push_back(make_sample("s" + std::to_string(i), "q", to_string(kCategories[rng() % kCategoryCount]), "g"));
    for (const char* model : {"a", "b"}) verdicts.push_back({set.back().id, model, score(rng), "", "j", "", 0});
  }
  const std::string reference = to_json(aggregate(verdicts, set)).dump();
  for (int trial = 0; trial < 20; ++trial) {
    std::shuffle(verdicts.begin(), verdicts.end(), rng);
    CHECK(to_json(aggregate(verdicts, set)).dump() == reference);
  }
  for (const auto& r : aggregate(verdicts, set)) {
    double all = 0.0;
    double rest = 0.0;
    for (std::size_t c = 0; c < kCategoryCount; ++c) {
      all += *r.means[c];
      if (kCategories[c] != Category::others) rest += *r.means[c];
    }
    CHECK(r.macro_ave == all / 9);
    CHECK(r.macro_ave_wo_others == rest / 8);
  }
}

TEST_CASE("aggregate edge cases") {
  std::vector<EvalSample> set = {make_sample("a", "q", "rewrite", std::nullopt), make_sample("b", "q", "others", "g")};
  const auto r = aggregate({{"a", "m", 0.4, "", "j", "", 0}, {"b", "m", 0.8, "", "j", "", 0}}, set);
  CHECK(r[0].macro_ave == doctest::Approx(0.6));
  CHECK(r[0].macro_ave_wo_others == doctest::Approx(0.4));
  CHECK(r[0].warnings.size() == 7);
  CHECK(to_json(r[0])["classification"].is_null());
  try {
    (void)aggregate({{"zzz", "m", 0.4, "", "j", "", 0}}, set);
    FAIL("expected consistency error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::consistency);
  }
  CHECK_THROWS_AS((void)aggregate({{"a", "m", 0.4, "", "j", "", 0}, {"a", "m", 0.5, "", "j", "", 0}}, set), Error);
  const auto json = to_json(r[0]);
  std::vector<std::string> keys;
  for (auto it = json.begin(); it != json.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"model", "others", "rewrite", "classification", "generation", "summarization",
                                         "extract", "open_qa", "brainstorming", "closed_qa", "score", "score_w/o_others",
                                         "counts", "warnings"});
  const auto v = verdict_from_json(to_json(JudgeVerdict{"a", "m", 0.25, "raw", "j", "t", 1}));
  CHECK(v.score == 0.25);
  CHECK(v.retries == 1);
}

TEST_CASE("dedup_evalset") {
  CHECK(dedup_evalset({make_sample("a", "write a poem about the sea", "generation", std::nullopt),
                       make_sample("b", "write a poem about the sea", "generation", std::nullopt)})
            .size() == 1);
  CHECK(dedup_evalset({make_sample("a", "write a poem about the sea", "generation", std::nullopt),
                       make_sample("b", "list three prime numbers", "open_qa", std::nullopt)})
            .size() == 2);
  const auto texts = oracle::near_duplicate_corpus(50, 77);
  std::vector<EvalSample> set;
  for (std::size_t i = 0; i < texts.size(); ++i) set.push_back(make_sample("e" + std::to_string(i), texts[i], "open_qa", "g"));
  const auto kept = dedup_evalset(set, {.seed = 5});
  const auto expected = oracle::exact_dedup_decisions(texts, 0.8, 5);
  std::set<std::string> kept_ids;
  for (const auto& s : kept) kept_ids.insert(s.id);
  std::size_t agree = 0;
  for (std::size_t i = 0; i < set.size(); ++i) agree += (kept_ids.count(set[i].id) > 0) == expected[i] ? 1 : 0;
  CHECK(agree >= 48);
}

TEST_CASE("evaluate accounts for every response") {
  std::vector<EvalSample> set;
  std::vector<ModelResponse> responses;
  for (int i = 0; i < 200; ++i) {
    set.push_back(make_sample("s" + std::to_string(i), "q" + std::to_string(i), to_string(kCategories[i % 9]), "g"));
    responses.push_back({set.back().id, "model", "answer"});
  }
  ScriptedChatClient client(
      Json{{"default_reply", "0.6"}, {"faults", {{"seed", 1}, {"transport_failure_rate", 0.3}, {"malformed_rate", 0.1}}}});
  const auto result = evaluate(set, responses, quiet_context(client), 6);
  CHECK(result.verdicts.size() + result.failures.size() == responses.size());
  CHECK(result.failures.size() > 0);
  std::map<std::string, int> injected;
  for (const auto& call : client.calls()) injected[call.tag] += call.outcome == ScriptedChatClient::Outcome::transport_failure;
  for (const auto& v : result.verdicts) CHECK(v.retries == injected[v.sample_id + "/model"]);
  for (const auto& f : result.failures) {
    if (f.kind == "scoring_parse") {
      CHECK(f.raw == ScriptedChatClient::kMalformedReply);
      CHECK(f.retries == injected[f.sample_id + "/model"]);
    } else {
      CHECK(f.kind == "transport");
      CHECK(injected[f.sample_id + "/model"] == 4);
    }
  }
  CHECK_THROWS_AS((void)evaluate(set, {{"nope", "m", "r"}}, quiet_context(client)), Error);
}
