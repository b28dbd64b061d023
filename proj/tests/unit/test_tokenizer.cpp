#include <doctest.h>

#include <random>

#include "bpe_oracle.hpp"
#include "synthetic_vocab.hpp"
#include "tokforge/common/error.hpp"
#include "tokforge/tokenizer/bpe_tokenizer.hpp"
#include "tokforge/tokenizer/bpe_trainer.hpp"
#include "tokforge/tokenizer/resize_plan.hpp"
#include "tokforge/tokenizer/token_stats.hpp"
#include "tokforge/tokenizer/tokenizer_io.hpp"
#include "tokforge/tokenizer/vocab_merge.hpp"

using namespace tokforge;
using namespace tokforge::tokenizer;

namespace {

const std::vector<std::string> kToyCorpus = {
    "the cat sat on the mat",
    "the dog sat on the log",
    "a cat and a dog met on a mat",
    "then the cat ran and the dog ran",
    "low lower lowest newer newest",
    "wider widest wide widen",
    "aaaa aaa aa a",
    "banana bandana cabana",
    "mississippi missing mist",
    "abracadabra abra cadabra",
    "the theme of the thesis",
    "sat sit set sot sut",
    "hello hello help helm",
    "ratatat tat tat",
    "one two three four five",
    "zzzz zz zzz",
    "the end is the beginning",
    "cat cat cat dog dog",
    "matter mat matte",
    "on and on and on",
};

std::vector<std::string> random_corpus(std::mt19937_64& rng, std::size_t max_symbols) {
  std::uniform_int_distribution<int> nlines(1, 12);
  std::uniform_int_distribution<int> alpha(2, 6);
  const int k = alpha(rng);
  std::uniform_int_distribution<int> letter(0, k - 1);
  std::vector<std::string> lines(static_cast<std::size_t>(nlines(rng)));
  std::size_t budget = max_symbols;
  for (auto& line : lines) {
    std::uniform_int_distribution<std::size_t> len(0, std::min<std::size_t>(budget, 120));
    const std::size_t n = len(rng);
    budget -= n;
    for (std::size_t i = 0; i < n; ++i) line.push_back(static_cast<char>('a' + letter(rng)));
  }
  return lines;
}

std::vector<std::pair<std::string, std::string>> merge_pairs(const MergeTable& table) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const Merge& m : table) out.emplace_back(m.left, m.right);
  return out;
}

Tokenizer single_merge_tokenizer() {
  std::vector<std::string> tokens = Vocabulary::bytes().tokens();
  tokens.emplace_back("ab");
  return Tokenizer(Vocabulary(std::move(tokens)), MergeTable({{"a", "b", MergeOrigin::base}}));
}

}  // namespace

TEST_CASE("train_bpe merges the only frequent pair") {
  const std::vector<std::string> corpus = {"ab ab ab"};
  const auto result = train_bpe(corpus, {.target_vocab_size = 257, .byte_fallback = true});
  REQUIRE(result.merges.size() == 1);
  CHECK(result.merges[0].left == "a");
  CHECK(result.merges[0].right == "b");
  CHECK(result.vocab.size() == 257);
  CHECK(result.vocab.token(256) == "ab");
  CHECK_FALSE(result.exhausted);
}

TEST_CASE("train_bpe rejects bad input") {
  const std::vector<std::string> empty;
  CHECK_THROWS_AS((void)train_bpe(empty, {.target_vocab_size = 300}), Error);
  const std::vector<std::string> blank = {"", ""};
  CHECK_THROWS_AS((void)train_bpe(blank, {.target_vocab_size = 300}), Error);
  const std::vector<std::string> corpus = {"abc"};
  try {
    (void)train_bpe(corpus, {.target_vocab_size = 255, .byte_fallback = true});
    FAIL("expected a parameter error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::parameter);
  }
  // Without byte fallback the alphabet is the three observed bytes.
  CHECK_NOTHROW((void)train_bpe(corpus, {.target_vocab_size = 3, .byte_fallback = false}));
  CHECK_THROWS_AS((void)train_bpe(corpus, {.target_vocab_size = 2, .byte_fallback = false}), Error);
}

TEST_CASE("train_bpe on the 20-line toy corpus equals the recount oracle") {
  REQUIRE(kToyCorpus.size() == 20);
  const auto result = train_bpe(kToyCorpus, {.target_vocab_size = 300, .byte_fallback = true});
  const auto expected = oracle::naive_bpe(kToyCorpus, 300, true);
  CHECK(merge_pairs(result.merges) == expected.merges);
  CHECK(result.vocab.tokens() == expected.vocab);
  CHECK(result.vocab.size() == 300);
}

TEST_CASE("train_bpe equals the oracle on random small corpora") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 40; ++trial) {
    const auto corpus = random_corpus(rng, 1000);
    const bool fallback = trial % 2 == 0;
    const std::size_t target = (fallback ? 256 : 6) + 60;
    const auto expected = oracle::naive_bpe(corpus, target, fallback);
    if (expected.vocab.empty() || std::all_of(corpus.begin(), corpus.end(), [](const auto& l) { return l.empty(); })) {
      CHECK_THROWS_AS((void)train_bpe(corpus, {.target_vocab_size = target, .byte_fallback = fallback}), Error);
      continue;
    }
    if (target < expected.vocab.size() - expected.merges.size()) continue;
    const auto result = train_bpe(corpus, {.target_vocab_size = target, .byte_fallback = fallback});
    INFO("trial " << trial);
    CHECK(merge_pairs(result.merges) == expected.merges);
    CHECK(result.vocab.tokens() == expected.vocab);
    CHECK(result.exhausted == (expected.vocab.size() < target));
  }
}

TEST_CASE("train_bpe is deterministic and reports exhaustion") {
  const auto a = train_bpe(kToyCorpus, {.target_vocab_size = 2000});
  const auto b = train_bpe(kToyCorpus, {.target_vocab_size = 2000});
  CHECK(a.vocab == b.vocab);
  CHECK(a.merges == b.merges);
  CHECK(format_vocab(a.vocab) == format_vocab(b.vocab));
  CHECK(a.exhausted);
  CHECK(a.vocab.size() < 2000);
  REQUIRE(a.warnings.size() == 1);
}

TEST_CASE("training lines encode to the trainer's final segmentation") {
  const auto result = train_bpe(kToyCorpus, {.target_vocab_size = 330});
  const Tokenizer tok(result.vocab, result.merges);
  const auto expected = oracle::naive_bpe(kToyCorpus, 330, true);
  // Replay the oracle's merges on each line to get its final segmentation.
  for (const std::string& line : kToyCorpus) {
    std::vector<std::string> seq;
    for (char c : line) seq.emplace_back(1, c);
    for (const auto& [l, r] : expected.merges) {
      std::vector<std::string> next;
      for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i + 1 < seq.size() && seq[i] == l && seq[i + 1] == r) {
          next.push_back(l + r);
          ++i;
        } else {
          next.push_back(seq[i]);
        }
      }
      seq = std::move(next);
    }
    std::vector<std::string> got;
    for (TokenId id : tok.encode(line)) got.push_back(tok.vocab().token(id));
    CHECK(got == seq);
  }
}

TEST_CASE("encode and decode basics") {
  const Tokenizer tok = single_merge_tokenizer();
  CHECK(tok.encode("").empty());
  const auto ids = tok.encode("abab");
  REQUIRE(ids.size() == 2);
  CHECK(ids[0] == 256);
  CHECK(ids[1] == 256);
  CHECK(tok.decode(std::vector<TokenId>{}).empty());
  CHECK(tok.decode(std::vector<TokenId>{256, 256}) == "abab");
  CHECK(tok.encode("aab") == std::vector<TokenId>{'a', 256});
  try {
    (void)tok.decode(std::vector<TokenId>{257});
    FAIL("expected a decoding error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::decoding);
  }
}

TEST_CASE("encode without byte fallback names the offending span") {
  const auto result = train_bpe(std::vector<std::string>{"abab"}, {.target_vocab_size = 3, .byte_fallback = false});
  const Tokenizer tok(result.vocab, result.merges);
  CHECK_FALSE(tok.vocab().byte_fallback());
  CHECK(tok.encode("abab").size() == 2);
  try {
    (void)tok.encode("abxyab");
    FAIL("expected an encoding error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::encoding);
    CHECK(std::string(e.what()).find("[2, 4)") != std::string::npos);
    CHECK(std::string(e.what()).find("xy") != std::string::npos);
  }
}

TEST_CASE("roundtrip: decode(encode(x)) == x for random bytes under byte fallback") {
  const auto result = train_bpe(kToyCorpus, {.target_vocab_size = 400});
  const Tokenizer tok(result.vocab, result.merges);
  REQUIRE(tok.vocab().byte_fallback());
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_int_distribution<int> pick(0, 19);
  for (int trial = 0; trial < 500; ++trial) {
    std::string x;
    if (trial % 2 == 0) {
      for (int i = 0; i < 100; ++i) x.push_back(static_cast<char>(byte(rng)));
    } else {
      x = kToyCorpus[static_cast<std::size_t>(pick(rng))] + std::string(1, static_cast<char>(byte(rng)));
    }
    const auto ids = tok.encode(x);
    CHECK(tok.decode(ids) == x);
    CHECK(ids.size() <= x.size());
  }
}

TEST_CASE("merge_vocab self-union is the identity") {
  const auto t = train_bpe(kToyCorpus, {.target_vocab_size = 300});
  const auto merged = merge_vocab(t.vocab, t.merges, t.vocab, t.merges);
  CHECK(merged.vocab == t.vocab);
  CHECK(merged.merges == t.merges);
  CHECK(merged.overlap == t.vocab.size());
}

TEST_CASE("merge_vocab keeps base ids and appends extension tokens") {
  std::vector<std::string> base_tokens = Vocabulary::bytes().tokens();
  base_tokens.emplace_back("ab");
  std::vector<std::string> ext_tokens = Vocabulary::bytes().tokens();
  ext_tokens.emplace_back("cd");
  const Vocabulary base(base_tokens), ext(ext_tokens);
  const MergeTable base_m({{"a", "b", MergeOrigin::base}}), ext_m({{"c", "d", MergeOrigin::base}});
  const auto merged = merge_vocab(base, base_m, ext, ext_m);
  CHECK(merged.vocab.size() == 258);
  CHECK(merged.vocab.find("ab") == TokenId{256});
  CHECK(merged.vocab.find("cd") == TokenId{257});
  REQUIRE(merged.merges.size() == 2);
  CHECK(merged.merges[0].origin == MergeOrigin::base);
  CHECK(merged.merges[1].origin == MergeOrigin::extension);
  CHECK(merged.overlap == 256);
}

TEST_CASE("merge_vocab union identity on the synthetic 32,000 + 50,000 fixture") {
  const auto base = fixture::make_base(32000);
  const auto ext = fixture::make_extension(base, 50000, 2542);
  const auto merged = merge_vocab(base.vocab, base.merges, ext.vocab, ext.merges);
  CHECK(merged.overlap == 2542);
  CHECK(merged.vocab.size() == 79458);
  CHECK(merged.vocab.size() == base.vocab.size() + ext.vocab.size() - merged.overlap);
  for (std::size_t id = 0; id < base.vocab.size(); ++id) {
    if (merged.vocab.token(static_cast<TokenId>(id)) != base.vocab.token(static_cast<TokenId>(id))) {
      FAIL("base id " << id << " moved");
    }
  }
  CHECK_NOTHROW(Tokenizer(merged.vocab, merged.merges));
}

TEST_CASE("merged tokenizer never uses more tokens than its base") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    const auto base_corpus = random_corpus(rng, 1000);
    const auto ext_corpus = random_corpus(rng, 1000);
    if (std::all_of(base_corpus.begin(), base_corpus.end(), [](const auto& l) { return l.empty(); }) ||
        std::all_of(ext_corpus.begin(), ext_corpus.end(), [](const auto& l) { return l.empty(); })) {
      continue;
    }
    const auto b = train_bpe(base_corpus, {.target_vocab_size = 280});
    const auto e = train_bpe(ext_corpus, {.target_vocab_size = 320});
    const auto m = merge_vocab(b.vocab, b.merges, e.vocab, e.merges);
    const Tokenizer base_tok(b.vocab, b.merges), merged_tok(m.vocab, m.merges);
    for (const auto& corpus : {base_corpus, ext_corpus}) {
      for (const auto& line : corpus) {
        const auto base_ids = base_tok.encode(line);
        const auto merged_ids = merged_tok.encode(line);
        CHECK(merged_ids.size() <= base_ids.size());
        CHECK(merged_tok.decode(merged_ids) == line);
      }
    }
  }
}

TEST_CASE("tok_stats means and reduction ratio") {
  std::vector<std::string> tokens = Vocabulary::bytes().tokens();
  tokens.emplace_back("ab");
  tokens.emplace_back("abc");
  const Tokenizer whole(Vocabulary(tokens), MergeTable({{"a", "b", MergeOrigin::base}, {"ab", "c", MergeOrigin::base}}));
  const std::vector<std::string> one = {"abc"};
  const std::vector<NamedTokenizer> named = {{"whole", &whole}};
  const auto r1 = tok_stats(one, named);
  CHECK(r1.tokenizers[0].mean_tokens_per_line == 1.0);
  CHECK_FALSE(r1.reduction_ratio.has_value());

  // Byte-level counts are the byte lengths 4, 6, 8.
  const Tokenizer bytes(Vocabulary::bytes(), MergeTable{});
  const std::vector<std::string> three = {"abcd", "abcdef", "abcdefgh"};
  const std::vector<NamedTokenizer> both = {{"bytes", &bytes}, {"whole", &whole}};
  const auto r3 = tok_stats(three, both, 2);
  CHECK(r3.tokenizers[0].total_tokens == 18);
  CHECK(r3.tokenizers[0].mean_tokens_per_line == doctest::Approx(6.0));
  // whole: "abc"+"d" = 2, "abc"+"def" = 4, "abc"+"defgh" = 6 -> mean 4
  CHECK(r3.tokenizers[1].mean_tokens_per_line == doctest::Approx(4.0));
  CHECK(*r3.reduction_ratio == doctest::Approx(1.0 / 3.0));
  CHECK(*r3.lines_with_more_tokens == 0);

  CHECK(reduction_ratio(733.0, 291.0) == doctest::Approx(0.603).epsilon(0.001 / 0.603));
  CHECK_THROWS_AS((void)tok_stats(std::vector<std::string>{}, named), Error);
}

TEST_CASE("resize_plan") {
  const Vocabulary base(std::vector<std::string>{"a", "b", "c", "d", "e"});
  const auto same = resize_plan(base, base, 8);
  CHECK(same.copied_rows.size() == 5);
  CHECK(same.new_rows.empty());

  const Vocabulary merged(std::vector<std::string>{"a", "b", "c", "d", "e", "ab", "cd"});
  const auto plan = resize_plan(base, merged, 8);
  CHECK(plan.old_size == 5);
  CHECK(plan.new_size == 7);
  REQUIRE(plan.copied_rows.size() == 5);
  for (TokenId i = 0; i < 5; ++i) CHECK(plan.copied_rows[i] == std::pair<TokenId, TokenId>{i, i});
  REQUIRE(plan.new_rows.size() == 2);
  CHECK(plan.new_rows[0] == std::pair<TokenId, InitRule>{5, InitRule::mean_of_copied});
  CHECK(plan.new_rows[1] == std::pair<TokenId, InitRule>{6, InitRule::mean_of_copied});
  CHECK(resize_plan(base, merged, 8, InitRule::zero).new_rows[0].second == InitRule::zero);
  CHECK(to_json(plan)["trainable_scope"] == "word_embeddings");

  const Vocabulary missing(std::vector<std::string>{"a", "b", "c", "d", "x"});
  const Vocabulary moved(std::vector<std::string>{"b", "a", "c", "d", "e"});
  for (const auto* bad : {&missing, &moved}) {
    try {
      (void)resize_plan(base, *bad, 8);
      FAIL("expected a consistency error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::consistency);
    }
  }
}

TEST_CASE("resize_plan for the synthetic 32,000 -> 79,458 merge lists 47,458 new rows") {
  const auto base = fixture::make_base(32000);
  const auto ext = fixture::make_extension(base, 50000, 2542);
  const auto merged = merge_vocab(base.vocab, base.merges, ext.vocab, ext.merges);
  const auto plan = resize_plan(base.vocab, merged.vocab, 4096);
  CHECK(plan.new_rows.size() == 47458);
  CHECK(plan.copied_rows.size() == 32000);
  CHECK(plan.copied_rows.size() + plan.new_rows.size() == plan.new_size);
}

TEST_CASE("vocab and merges files round-trip arbitrary byte tokens") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> byte(0, 255);
  std::uniform_int_distribution<int> len(2, 6);
  std::vector<std::string> tokens = Vocabulary::bytes().tokens();
  tokens.emplace_back("\xe4\xbd\xa0");  // valid UTF-8 stays readable
  tokens.emplace_back("\\t\t\n");
  while (tokens.size() < 600) {
    std::string t;
    for (int i = len(rng); i > 0; --i) t.push_back(static_cast<char>(byte(rng)));
    if (std::find(tokens.begin(), tokens.end(), t) == tokens.end()) tokens.push_back(t);
  }
  const Vocabulary vocab(tokens);
  const std::string text = format_vocab(vocab);
  CHECK(text.find("\xe4\xbd\xa0\t256\n") != std::string::npos);
  CHECK(parse_vocab(text) == vocab);

  const auto trained = train_bpe(kToyCorpus, {.target_vocab_size = 320});
  CHECK(parse_merges(format_merges(trained.merges)) == trained.merges);
  CHECK_THROWS_AS((void)parse_vocab("a\t0\nb\t2\n"), Error);
  CHECK_THROWS_AS((void)parse_merges("a\tb\t0\tsideways\n"), Error);
}

TEST_CASE("Tokenizer rejects inconsistent merge tables") {
  CHECK_THROWS_AS(Tokenizer(Vocabulary::bytes(), MergeTable({{"a", "b", MergeOrigin::base}})), Error);
  CHECK_THROWS_AS(MergeTable({{"a", "b", MergeOrigin::extension}, {"c", "d", MergeOrigin::base}}), Error);
}
