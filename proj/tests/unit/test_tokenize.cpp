// Copyright 2026 The vulnforge Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "support/bpe_oracle.hpp"
#include "support/segment_oracle.hpp"
#include "support/temp_dir.hpp"
#include "vulnforge/core/error.hpp"
#include "vulnforge/tokenize/bpe.hpp"
#include "vulnforge/tokenize/token_index.hpp"
#include "vulnforge/tokenize/unigram.hpp"
#include "vulnforge/tokenize/vocab.hpp"

using namespace vulnforge;
using namespace vulnforge::tokenize;

namespace {

const std::string kM(kWordMarker);

std::size_t base_size(const std::vector<std::string>& corpus) {
  std::set<std::string> base;
  for (const auto& t : corpus) {
    for (const auto& w : split_words(t)) {
      for (auto& s : initial_symbols(w)) base.insert(s);
    }
  }
  return base.size();
}

SubwordVocab unigram_vocab(const std::map<std::string, double>& probs) {
  SubwordVocab v;
  v.kind = VocabKind::kUnigram;
  for (const auto& [t, p] : probs) {
    v.tokens.push_back(t);
    v.logprob[t] = std::log(p);
  }
  v.size_limit = v.tokens.size();
  return v;
}

}  // namespace

TEST_CASE("bpe toy corpus merges follow pair counting") {
  const auto corpus = testing::bpe_toy_corpus();
  const auto base = base_size(corpus);
  const auto vocab = train_bpe(corpus, base + 4);
  const auto oracle = testing::oracle_bpe_merges(corpus, 4);
  CHECK(vocab.merges == oracle);
  REQUIRE(vocab.merges.size() == 4);
  CHECK(vocab.merges[0] == std::pair<std::string, std::string>{"e", "s"});
  CHECK(vocab.merges[1] == std::pair<std::string, std::string>{"es", "t"});
  CHECK(vocab.merges[2] == std::pair<std::string, std::string>{"o", "w"});
  CHECK(vocab.tokens.size() == base + 4);
  CHECK_NOTHROW(validate_vocab(vocab));
}

TEST_CASE("bpe single-occurrence pair merges when the count floor is one") {
  const std::vector<std::string> corpus = {"aa"};
  BpeOptions opts;
  opts.min_pair_count = 1;
  const auto v = train_bpe(corpus, base_size(corpus) + 1, opts);
  REQUIRE(v.merges.size() == 1);
  CHECK(v.merges[0] == std::pair<std::string, std::string>{kM + "a", "a"});
  CHECK(train_bpe(corpus, base_size(corpus) + 1).merges.empty());
}

TEST_CASE("bpe on unique single characters makes no merges") {
  const std::vector<std::string> corpus = {"a b c d"};
  const auto v = train_bpe(corpus, 100);
  CHECK(v.merges.empty());
}

TEST_CASE("bpe size limit below the alphabet is an error") {
  const std::vector<std::string> corpus = {"abcdef"};
  CHECK_THROWS_AS(train_bpe(corpus, 3), ValidationError);
}

TEST_CASE("bpe round trip and merge replay") {
  const std::vector<std::string> corpus = {"the overflow in the parser overflows the buffer",
                                           "remote attackers overflow the parser",
                                           "Überlauf im Parser – naïve café"};
  const auto vocab = train_bpe(corpus, 120);
  BpeModel model(vocab);
  for (const auto& text : corpus) {
    const auto toks = tokenize_map(text, vocab);
    CHECK(detokenize(toks, vocab) == text);
    for (const auto& t : toks) CHECK(vocab.contains(t));
  }
  const auto merged = model.apply_merges(initial_symbols("overflow"));
  CHECK(merged == model.encode_word("overflow"));
}

TEST_CASE("tokenize_map maps unseen characters to unk") {
  const std::vector<std::string> corpus = {"abc abc"};
  const auto vocab = train_bpe(corpus, 10);
  const auto toks = tokenize_map("abz", vocab);
  REQUIRE_FALSE(toks.empty());
  CHECK(toks.back() == "<UNK>");
  CHECK(tokenize_map("", vocab).empty());
  std::string joined;
  for (const auto& t : tokenize_map("abc", vocab)) joined += t;
  CHECK(joined == kM + "abc");
}

TEST_CASE("vocab json round trip") {
  testing::TempDir dir;
  const auto vocab = train_bpe(testing::bpe_toy_corpus(), 20);
  save_vocab(dir.file("v.json"), vocab);
  CHECK(load_vocab(dir.file("v.json")) == vocab);
}

TEST_CASE("unigram_prob examples") {
  const auto v = unigram_vocab({{"a", 0.5}, {"b", 0.25}, {"ab", 0.125}});
  CHECK(unigram_prob(std::vector<std::string>{}, v) == 0.0);
  CHECK(unigram_prob(std::vector<std::string>{"a"}, v) == doctest::Approx(std::log(0.5)));
  CHECK(unigram_prob(std::vector<std::string>{"a", "b"}, v) == doctest::Approx(std::log(0.125)));
  CHECK_THROWS_AS(unigram_prob(std::vector<std::string>{"zz"}, v), ValidationError);
}

TEST_CASE("best segmentation picks the higher product") {
  CHECK(best_segmentation("ab", unigram_vocab({{"a", 0.2}, {"b", 0.2}, {"ab", 0.3}})) ==
        std::vector<std::string>{"ab"});
  CHECK(best_segmentation("ab", unigram_vocab({{"a", 0.5}, {"b", 0.4}, {"ab", 0.1}})) ==
        std::vector<std::string>{"a", "b"});
  CHECK_THROWS_AS(best_segmentation("abc", unigram_vocab({{"a", 0.5}, {"b", 0.5}})), ValidationError);
}

TEST_CASE("best segmentation matches exhaustive enumeration") {
  const std::map<std::string, double> probs = {{"a", 0.3}, {"b", 0.25}, {"ab", 0.2}, {"ba", 0.15}, {"aab", 0.1}};
  const auto v = unigram_vocab(probs);
  std::map<std::string, double> lp;
  for (const auto& [t, p] : probs) lp[t] = std::log(p);
  for (std::size_t len = 1; len <= 6; ++len) {
    for (unsigned bits = 0; bits < (1u << len); ++bits) {
      std::string w;
      for (std::size_t i = 0; i < len; ++i) w += ((bits >> i) & 1u) ? 'b' : 'a';
      const auto expected = testing::exhaustive_segmentation(w, lp);
      REQUIRE(expected);
      const auto got = best_segmentation(w, v);
      CHECK(got == expected->tokens);
      CHECK(unigram_prob(got, v) >= unigram_prob(utf8_chars(w), v) - 1e-12);
    }
  }
}

TEST_CASE("removal loss examples") {
  const auto v = unigram_vocab({{kM, 0.2}, {"a", 0.2}, {"b", 0.2}, {"ab", 0.1}, {"zz", 0.05}, {"z", 0.05}});
  const std::vector<std::string> corpus = {"ab ab b", "a"};
  CHECK(removal_loss(v, "zz", corpus) == 0.0);
  CHECK(removal_loss(v, "ab", std::vector<std::string>{}) == 0.0);
  CHECK_THROWS_AS(removal_loss(v, "a", corpus), ValidationError);

  // "ab" is forced in every word below; the oracle re-segments each word with
  // and without it by enumeration.
  const auto w = unigram_vocab({{kM, 0.3}, {"a", 0.05}, {"b", 0.05}, {"ab", 0.5}, {"c", 0.1}});
  const std::vector<std::string> three = {"ab", "abab", "cab"};
  std::map<std::string, double> lp;
  for (const auto& t : w.tokens) lp[t] = w.logprob.at(t);
  const std::string ab = "ab";
  double expected = 0.0;
  for (const auto& word : three) {
    const auto with = testing::exhaustive_segmentation(kM + word, lp);
    const auto without = testing::exhaustive_segmentation(kM + word, lp, &ab);
    REQUIRE(with);
    REQUIRE(without);
    REQUIRE(std::find(with->tokens.begin(), with->tokens.end(), "ab") != with->tokens.end());
    expected += with->score - without->score;
  }
  CHECK(removal_loss(w, "ab", three) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(removal_loss(w, "ab", three) >= 0.0);
}

TEST_CASE("prune leaves a vocab already at its limit unchanged") {
  const auto v = unigram_vocab({{kM, 0.2}, {"a", 0.3}, {"b", 0.3}, {"ab", 0.2}});
  const std::vector<std::string> corpus = {"ab"};
  CHECK(prune_unigram(v, corpus, 4).tokens == v.tokens);
  CHECK_THROWS_AS(prune_unigram(v, corpus, 2), ValidationError);
}

TEST_CASE("prune removes useless multi-character tokens") {
  const auto v = unigram_vocab({{kM, 0.2}, {"a", 0.2}, {"b", 0.2}, {"xy", 0.2}, {"yx", 0.1}, {"x", 0.05}, {"y", 0.05}});
  const std::vector<std::string> corpus = {"ab ba", "a b"};
  const auto p = prune_unigram(v, corpus, 5);
  for (const auto& t : p.tokens) CHECK(utf8_chars(t).size() == 1);
  CHECK(p.tokens.size() == 5);
  CHECK_NOTHROW(validate_vocab(p));
}

TEST_CASE("prune to chars plus two matches greedy search with enumerated losses") {
  const std::vector<std::string> corpus = {"abab", "abc", "cab cab", "bc"};
  const auto words = unigram_words(corpus);
  auto v = unigram_vocab({{kM, 0.15}, {"a", 0.1}, {"b", 0.1}, {"c", 0.1}, {"ab", 0.15},
                          {"ca", 0.1}, {"bc", 0.1}, {"cab", 0.1}, {kM + "ab", 0.1}});
  const std::size_t limit = 4 + 2;
  const auto pruned = prune_unigram(v, corpus, limit);

  auto oracle = v;
  while (oracle.tokens.size() > limit) {
    std::map<std::string, double> lp(oracle.logprob.begin(), oracle.logprob.end());
    std::vector<std::pair<double, std::string>> ranked;
    for (const auto& t : oracle.tokens) {
      if (utf8_chars(t).size() == 1) continue;
      double loss = 0.0;
      for (const auto& w : words) {
        const auto with = testing::exhaustive_segmentation(w.word, lp);
        if (std::find(with->tokens.begin(), with->tokens.end(), t) == with->tokens.end()) continue;
        const auto without = testing::exhaustive_segmentation(w.word, lp, &t);
        loss += w.count * (with->score - without->score);
      }
      ranked.emplace_back(std::max(loss, 0.0), t);
    }
    std::sort(ranked.begin(), ranked.end());
    const auto drop = ranked.front().second;
    oracle.tokens.erase(std::find(oracle.tokens.begin(), oracle.tokens.end(), drop));
    oracle.logprob.erase(drop);
    for (int round = 0; round < 2; ++round) {
      std::map<std::string, double> counts;
      double total = 0.0;
      std::map<std::string, double> cur(oracle.logprob.begin(), oracle.logprob.end());
      for (const auto& w : words) {
        const auto seg = testing::exhaustive_segmentation(w.word, cur);
        for (const auto& t : seg->tokens) {
          counts[t] += w.count;
          total += w.count;
        }
      }
      const double denom = total + 0.1 * static_cast<double>(oracle.tokens.size());
      for (const auto& t : oracle.tokens) oracle.logprob[t] = std::log((counts[t] + 0.1) / denom);
    }
  }
  std::set<std::string> a(pruned.tokens.begin(), pruned.tokens.end());
  std::set<std::string> b(oracle.tokens.begin(), oracle.tokens.end());
  CHECK(a == b);
  CHECK(pruned.tokens.size() == limit);
}

TEST_CASE("trained unigram vocab is a valid sub-distribution and round trips") {
  const std::vector<std::string> corpus = {"buffer overflow buffer overflow", "overflow in buffer handling",
                                           "remote buffer overflow"};
  const auto v = train_unigram(corpus, 30);
  CHECK(v.tokens.size() <= 30);
  CHECK_NOTHROW(validate_vocab(v));
  for (const auto& text : corpus) CHECK(detokenize(tokenize_map(text, v), v) == text);
}

TEST_CASE("token index reserves specials and round trips text") {
  const auto vocab = train_bpe(testing::bpe_toy_corpus(), 25);
  TokenIndex index(vocab);
  CHECK(index.size() == vocab.tokens.size() + kNumSpecial);
  CHECK(index.id("no-such-token") == kUnkId);
  const auto ids = index.encode("newest lower");
  for (int id : ids) CHECK(id >= kNumSpecial);
  auto framed = ids;
  framed.insert(framed.begin(), kBosId);
  framed.push_back(kEosId);
  framed.push_back(kPadId);
  CHECK(index.decode(framed) == "newest lower");
  CHECK_THROWS(index.token(static_cast<int>(index.size())));
}
