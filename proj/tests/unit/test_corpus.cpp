#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "jaccard_oracle.hpp"
#include "tokforge/common/error.hpp"
#include "tokforge/corpus/dedup.hpp"
#include "tokforge/corpus/diversity.hpp"
#include "tokforge/corpus/minhash.hpp"
#include "tokforge/corpus/ngram_lm.hpp"
#include "tokforge/corpus/pipeline.hpp"
#include "tokforge/corpus/ppl_filter.hpp"

using namespace tokforge;
using namespace tokforge::corpus;

namespace {

std::vector<Document> make_docs(const std::vector<std::string>& texts) {
  std::vector<Document> docs;
  for (std::size_t i = 0; i < texts.size(); ++i) docs.push_back({"d" + std::to_string(i), texts[i], Json::object(), Language::en});
  return docs;
}

std::vector<std::string> ids(const std::vector<Document>& docs) {
  std::vector<std::string> out;
  for (const auto& d : docs) out.push_back(d.id);
  return out;
}

}  // namespace

TEST_CASE("exact_dedup keeps first occurrences") {
  const auto r1 = exact_dedup(make_docs({"hello world", "hello world"}));
  CHECK(ids(r1.kept) == std::vector<std::string>{"d0"});
  CHECK(r1.report.removed == 1);

  const auto r2 = exact_dedup(make_docs({"hello world", "other text", "  hello \t world \n"}));
  CHECK(ids(r2.kept) == std::vector<std::string>{"d0", "d1"});
  CHECK(r2.report.input == 3);
  CHECK(r2.report.output == 2);

  // NFC and CJK per-character tokens make these the same document.
  const auto r3 = exact_dedup(make_docs({"caf\xc3\xa9 你好", "cafe\xcc\x81 你 好"}));
  CHECK(r3.kept.size() == 1);

  const auto docs = make_docs({"a b", "a  b", "c", "a b ", "c"});
  const auto once = exact_dedup(docs);
  CHECK(ids(exact_dedup(once.kept).kept) == ids(once.kept));
}

TEST_CASE("semantic_dedup trivial cases") {
  const SemanticDedupOptions opts{.jaccard_threshold = 1.0, .num_hashes = 128, .shingle_size = 5, .seed = 1};
  CHECK(semantic_dedup(make_docs({"the same document", "the same document"}), opts).kept.size() == 1);
  const SemanticDedupOptions low{.jaccard_threshold = 0.01, .num_hashes = 128, .shingle_size = 5, .seed = 1};
  CHECK(semantic_dedup(make_docs({"aaaaaaaa", "bbbbbbbb"}), low).kept.size() == 2);
  CHECK(semantic_dedup({}, opts).kept.empty());
}

TEST_CASE("semantic_dedup errors") {
  try {
    (void)semantic_dedup(make_docs({"abc", "de"}), {.shingle_size = 5});
    FAIL("expected degenerate input");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::degenerate_input);
  }
  CHECK_THROWS_AS((void)semantic_dedup(make_docs({"abcdefg"}), {.jaccard_threshold = 0.0}), Error);
  CHECK_THROWS_AS((void)semantic_dedup(make_docs({"abcdefg"}), {.jaccard_threshold = 1.5}), Error);
  // One short document among long ones is fine.
  CHECK(semantic_dedup(make_docs({"abc", "abcdefgh"}), {.shingle_size = 5}).kept.size() == 2);
}

TEST_CASE("semantic_dedup agrees with the exact pairwise oracle and is idempotent") {
  const auto texts = oracle::near_duplicate_corpus(200, 42);
  const auto docs = make_docs(texts);
  const SemanticDedupOptions opts{.jaccard_threshold = 0.8, .num_hashes = 128, .shingle_size = 5, .seed = 2024};
  const auto result = semantic_dedup(docs, opts);
  const auto expected = oracle::exact_dedup_decisions(texts, 0.8, 5);
  std::set<std::string> kept_ids;
  for (const auto& d : result.kept) kept_ids.insert(d.id);
  std::size_t agree = 0;
  for (std::size_t i = 0; i < docs.size(); ++i) agree += (kept_ids.count(docs[i].id) > 0) == expected[i] ? 1 : 0;
  MESSAGE("agreement " << agree << "/200, oracle keeps " << std::count(expected.begin(), expected.end(), true)
                       << ", minhash keeps " << result.kept.size());
  CHECK(agree >= 190);
  CHECK(result.kept.size() < docs.size());

  CHECK(ids(semantic_dedup(result.kept, opts).kept) == ids(result.kept));
  CHECK(ids(semantic_dedup(docs, opts).kept) == ids(result.kept));
}

TEST_CASE("MinHash estimates track exact Jaccard") {
  const auto texts = oracle::near_duplicate_corpus(120, 7);
  const MinHasher hasher(128, 99);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> pick(0, texts.size() - 1);
  int close = 0;
  const int pairs = 400;
  for (int p = 0; p < pairs; ++p) {
    const auto& a = texts[pick(rng)];
    const auto& b = texts[pick(rng)];
    const double exact = oracle::exact_jaccard(oracle::shingle_set(a, 5), oracle::shingle_set(b, 5));
    const double est = estimated_jaccard(hasher.signature(shingle_hashes(a, 5)), hasher.signature(shingle_hashes(b, 5)));
    close += std::abs(est - exact) <= 0.1 ? 1 : 0;
  }
  CHECK(close >= pairs * 9 / 10);
  const Banding b = choose_banding(128, 0.8);
  CHECK(b.rows * b.bands <= 128);
  CHECK(b.rows >= 1);
}

TEST_CASE("uniform unigram model has perplexity |V|") {
  // a, b, c, <unk> (the rare z_i) and </s> each occur once per document.
  std::vector<std::string> corpus;
  for (int i = 0; i < 6; ++i) corpus.push_back("a b c z" + std::to_string(i));
  const auto lm = NgramLM::train(corpus, {.order = 1, .smoothing = Smoothing::add_k, .add_k = 1.0, .unk_min_count = 2});
  REQUIRE(lm.vocab_size() == 5);
  for (const std::string& w : lm.vocabulary()) CHECK(lm.prob({}, w) == doctest::Approx(0.2).epsilon(1e-12));
  for (const char* doc : {"a", "c b a", "never seen words", "a a a a a a a"}) {
    CHECK(std::abs(lm.perplexity(doc) - 5.0) < 1e-9);
  }
}

TEST_CASE("add-one bigram probabilities and perplexity match hand computation") {
  // Documents "a b a" and "b b". Bigrams: <s>a ab ba a</s> <s>b bb b</s>.
  // Context totals: <s>:2, a:2, b:3. V = {a, b, </s>, <unk>}, |V| = 4.
  const std::vector<std::string> corpus = {"a b a", "b b"};
  const auto lm = NgramLM::train(corpus, {.order = 2, .smoothing = Smoothing::add_k, .add_k = 1.0});
  REQUIRE(lm.vocab_size() == 4);
  using H = std::vector<std::string>;
  CHECK(lm.prob(H{}, "a") == doctest::Approx(2.0 / 6.0));           // (1+1)/(2+4)
  CHECK(lm.prob(H{}, "b") == doctest::Approx(2.0 / 6.0));
  CHECK(lm.prob(H{}, "</s>") == doctest::Approx(1.0 / 6.0));
  CHECK(lm.prob(H{"a"}, "b") == doctest::Approx(2.0 / 6.0));
  CHECK(lm.prob(H{"a"}, "a") == doctest::Approx(1.0 / 6.0));
  CHECK(lm.prob(H{"a"}, "</s>") == doctest::Approx(2.0 / 6.0));
  CHECK(lm.prob(H{"b"}, "a") == doctest::Approx(2.0 / 7.0));
  CHECK(lm.prob(H{"b"}, "b") == doctest::Approx(2.0 / 7.0));
  CHECK(lm.prob(H{"b"}, "</s>") == doctest::Approx(2.0 / 7.0));
  CHECK(lm.prob(H{"b"}, "zzz") == doctest::Approx(1.0 / 7.0));
  // "a b a </s>": 1/3 * 1/3 * 2/7 * 1/3 = 2/189 over 4 tokens.
  CHECK(std::abs(lm.perplexity("a b a") - std::pow(189.0 / 2.0, 0.25)) < 1e-9);
  try {
    (void)lm.perplexity("   ");
    FAIL("expected undefined perplexity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::undefined_ppl);
  }
}

TEST_CASE("interpolated Kneser-Ney bigram matches hand computation") {
  // Same corpus, D = 0.5. Continuation counts for unigrams (distinct left
  // neighbours): a <- {<s>, b} = 2, b <- {a, b, <s>} = 3, </s> <- {a, b} = 2; total 7.
  // p1(w) = max(N(w) - D, 0)/7 + D*3/7 * 1/4.
  const std::vector<std::string> corpus = {"a b a", "b b"};
  const auto lm = NgramLM::train(corpus, {.order = 2, .smoothing = Smoothing::interpolated, .discount = 0.5});
  const double uni_a = 1.5 / 7 + 0.5 * 3 / 7 / 4;
  const double uni_b = 2.5 / 7 + 0.5 * 3 / 7 / 4;
  const double uni_unk = 0.5 * 3 / 7 / 4;
  using H = std::vector<std::string>;
  // Context "b": counts a:1, b:1, </s>:1, total 3, three types.
  CHECK(lm.prob(H{"b"}, "a") == doctest::Approx(0.5 / 3 + 0.5 * 3 / 3 * uni_a));
  CHECK(lm.prob(H{"b"}, "b") == doctest::Approx(0.5 / 3 + 0.5 * 3 / 3 * uni_b));
  CHECK(lm.prob(H{"b"}, "nope") == doctest::Approx(0.5 * 3 / 3 * uni_unk));
  // Context <s>: counts a:1, b:1.
  CHECK(lm.prob(H{}, "a") == doctest::Approx(0.5 / 2 + 0.5 * 2 / 2 * uni_a));
}

TEST_CASE("n-gram distributions are normalized for sampled contexts") {
  std::vector<std::string> corpus;
  std::mt19937_64 rng(11);
  const std::vector<std::string> words = {"x", "y", "z", "w", "v", "你", "好"};
  std::uniform_int_distribution<std::size_t> pick(0, words.size() - 1);
  for (int d = 0; d < 30; ++d) {
    std::string s;
    for (int i = 0; i < 12; ++i) s += words[pick(rng)] + " ";
    corpus.push_back(s);
  }
  for (const auto smoothing : {Smoothing::add_k, Smoothing::interpolated}) {
    for (int order : {1, 2, 3}) {
      const auto lm = NgramLM::train(corpus, {.order = order, .smoothing = smoothing, .add_k = 0.5});
      const auto vocab = lm.vocabulary();
      for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::string> history;
        for (int i = 0; i < 2; ++i) history.push_back(trial % 7 == 0 ? "<s>" : words[pick(rng)]);
        if (trial % 13 == 0) history.back() = "unseen";
        double total = 0.0;
        for (const auto& w : vocab) total += lm.prob(history, w);
        CHECK(std::abs(total - 1.0) < 1e-9);
      }
    }
  }
  CHECK_THROWS_AS((void)NgramLM::train(std::vector<std::string>{"", "  "}, {}), Error);
}

TEST_CASE("repeating the most likely token gives the lowest perplexity") {
  const std::vector<std::string> corpus = {"a a a b", "a c a a", "a b"};
  const auto lm = NgramLM::train(corpus, {.order = 1, .smoothing = Smoothing::add_k});
  const double best = lm.perplexity("a a a a");
  for (const char* other : {"a a a b", "b b b b", "c a b a", "x y z w"}) CHECK(best <= lm.perplexity(other));
}

TEST_CASE("ppl_filter thresholds and percentiles") {
  // Add-one unigram over "a"x5 "b"x3 "c"x1 with one </s> per document:
  // counts a=5 b=3 c=1 </s>=2 <unk>=0, total 11, |V| = 5, p(w) = (c+1)/16.
  const std::vector<std::string> ref = {"a a a b b", "a a b c"};
  const auto lm = NgramLM::train(ref, {.order = 1, .smoothing = Smoothing::add_k});
  const std::map<std::string, double> p = {{"a", 6.0 / 16}, {"b", 4.0 / 16}, {"c", 2.0 / 16}, {"x", 1.0 / 16}};
  const std::vector<std::string> texts = {"a", "b", "c", "x", "a a", "b c", "a x", "c c", "a b", "x x"};
  std::vector<double> hand;
  for (const auto& t : texts) {
    double log_sum = std::log(3.0 / 16);  // </s>
    std::size_t n = 1;
    for (char ch : t) {
      if (ch == ' ') continue;
      log_sum += std::log(p.at(std::string(1, ch)));
      ++n;
    }
    hand.push_back(std::exp(-log_sum / static_cast<double>(n)));
  }
  const auto docs = make_docs(texts);
  const auto all = ppl_filter(docs, lm, AbsoluteThreshold{std::numeric_limits<double>::infinity()});
  CHECK(all.filtered.kept.size() == docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) CHECK(std::abs(all.perplexities[i] - hand[i]) < 1e-9);

  const auto half = ppl_filter(docs, lm, PercentileCutoff{50});
  std::vector<std::size_t> order(docs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return hand[a] < hand[b]; });
  std::vector<std::string> expected;
  std::vector<std::size_t> chosen(order.begin(), order.begin() + 5);
  std::sort(chosen.begin(), chosen.end());
  for (auto i : chosen) expected.push_back(docs[i].id);
  CHECK(ids(half.filtered.kept) == expected);
  CHECK(half.filtered.report.removed == 5);

  CHECK_THROWS_AS((void)ppl_filter(docs, lm, PercentileCutoff{0}), Error);
  CHECK_THROWS_AS((void)ppl_filter(docs, lm, PercentileCutoff{100}), Error);
  const auto with_empty = ppl_filter(make_docs({"a", ""}), lm, AbsoluteThreshold{1e9});
  CHECK(with_empty.filtered.kept.size() == 1);
}

TEST_CASE("diversity_report") {
  const auto single = diversity_report(make_docs({"x x x", "x"}));
  CHECK(single.entropy_bits == 0.0);
  CHECK(single.top1pct_mass == 1.0);
  CHECK(single.type_token_ratio == doctest::Approx(0.25));

  const auto uniform = diversity_report(make_docs({"a b c d", "e f g h"}));
  CHECK(uniform.entropy_bits == doctest::Approx(3.0));

  const auto five = diversity_report(make_docs({"the cat", "the dog", "a cat", "你好", "the"}));
  const std::vector<std::pair<std::string, std::size_t>> expected = {
      {"the", 3}, {"cat", 2}, {"a", 1}, {"dog", 1}, {"你", 1}, {"好", 1}};
  CHECK(five.frequencies == expected);
  CHECK(five.total_tokens == 9);
  CHECK_THROWS_AS((void)diversity_report(make_docs({"", " "})), Error);
}

TEST_CASE("clean_pipeline composes stages and accounts for every document") {
  const auto texts = oracle::near_duplicate_corpus(60, 3);
  auto docs = make_docs(texts);
  docs.push_back({"dup", texts[0], Json::object(), Language::en});

  const auto identity = clean_pipeline(docs, PipelineConfig{});
  CHECK(identity.kept.size() == docs.size());
  CHECK(identity.report.input == identity.report.output);
  CHECK(identity.report.stages.empty());

  PipelineConfig cfg;
  cfg.stages = {"exact_dedup", "semantic_dedup", "ppl_filter"};
  cfg.semantic.seed = 9;
  cfg.cutoff = PercentileCutoff{80};
  const auto lm = NgramLM::train(texts, {.order = 2});
  const auto result = clean_pipeline(docs, cfg, &lm);

  const auto s1 = exact_dedup(docs);
  const auto s2 = semantic_dedup(s1.kept, cfg.semantic);
  const auto s3 = ppl_filter(s2.kept, lm, cfg.cutoff);
  CHECK(ids(result.kept) == ids(s3.filtered.kept));
  REQUIRE(result.report.stages.size() == 3);
  CHECK(result.report.stages[0].removed >= 1);
  CHECK_NOTHROW(result.report.validate());
  CHECK(result.report.input == docs.size());
  CHECK(result.report.output == result.kept.size());

  PipelineConfig bad;
  bad.stages = {"ppl_filter"};
  CHECK_THROWS_AS((void)clean_pipeline(docs, bad), Error);
  try {
    (void)pipeline_config_from_json(Json{{"stages", {"exact_dedup", "spellcheck"}}});
    FAIL("expected config error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::config);
  }
  const auto cfg2 = pipeline_config_from_json(to_json(cfg));
  CHECK(cfg2.stages == cfg.stages);
}

TEST_CASE("cleaning report fixture from a 2.3M -> 500K run validates") {
  const Json fixture = Json::parse(R"({
    "input": 2300000, "output": 500000,
    "stages": [
      {"stage": "exact_dedup", "input": 2300000, "output": 1700000, "removed": 600000},
      {"stage": "semantic_dedup", "input": 1700000, "output": 900000, "removed": 800000},
      {"stage": "ppl_filter", "input": 900000, "output": 500000, "removed": 400000}
    ]})");
  const auto report = cleaning_report_from_json(fixture);
  CHECK(report.input == 2300000);
  CHECK(report.output == 500000);
  Json broken = fixture;
  broken["stages"][1]["input"] = 1600000;
  CHECK_THROWS_AS((void)cleaning_report_from_json(broken), Error);
  broken = fixture;
  broken["stages"][2]["removed"] = 1;
  CHECK_THROWS_AS((void)cleaning_report_from_json(broken), Error);
}
