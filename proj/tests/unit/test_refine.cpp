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

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "vulnforge/core/error.hpp"
#include "vulnforge/refine/refine.hpp"
#include "vulnforge/textprep/sentences.hpp"

using namespace vulnforge;
using namespace vulnforge::refine;

namespace {

embed::BuiltinEncoder make_encoder() { return embed::BuiltinEncoder{embed::EncoderSpec{}}; }

AugmentedInstance inst_with(const std::string& text) {
  AugmentedInstance inst;
  inst.cve_id = "CVE-2020-0001";
  inst.description = "target";
  inst.augmented_text = text;
  inst.label = "label";
  return inst;
}

using Counts = std::map<std::string, double>;

// Independent frequency-vector cosine: counts over whole-instance totals.
double oracle_cosine(const Counts& a, const Counts& b, const Counts& totals) {
  double dot = 0, na = 0, nb = 0;
  for (const auto& [w, c] : a) {
    const double x = c / totals.at(w);
    na += x * x;
    if (b.count(w)) dot += x * (b.at(w) / totals.at(w));
  }
  for (const auto& [w, c] : b) nb += (c / totals.at(w)) * (c / totals.at(w));
  return dot / std::sqrt(na * nb);
}

}  // namespace

TEST_CASE("dedup drops exact repeats and keeps order") {
  auto enc = make_encoder();
  const std::vector<std::string> s = {"alpha beta gamma", "delta epsilon", "alpha beta gamma"};
  CHECK(dedup_sentences(s, enc, 0.98) == std::vector<std::string>{"alpha beta gamma", "delta epsilon"});
  CHECK(dedup_sentences(std::vector<std::string>{}, enc, 0.98).empty());
}

TEST_CASE("dedup keeps a pair just under the threshold") {
  auto enc = make_encoder();
  std::string a;
  for (int i = 0; i < 16; ++i) a += (i ? " tok" : "tok") + std::to_string(i);
  const std::string b = a + " extra";
  const double c = embed::cosine(enc.encode_one(a), enc.encode_one(b));
  REQUIRE(c >= 0.96);
  REQUIRE(c < 0.98);
  CHECK(dedup_sentences(std::vector<std::string>{a, b}, enc, 0.98).size() == 2);
  CHECK(dedup_sentences(std::vector<std::string>{a, b}, enc, c).size() == 1);
}

TEST_CASE("freq vectors examples") {
  const std::vector<std::vector<std::string>> one = {{"buffer", "overflow", "buffer"}};
  const auto v = freq_vectors(one);
  REQUIRE(v.vectors.size() == 1);
  CHECK(v.vectors[0].entries == std::map<std::string, double>{{"buffer", 1.0}, {"overflow", 1.0}});

  const std::vector<std::vector<std::string>> two = {{"code", "alpha"}, {"code", "code", "beta"}};
  const auto w = freq_vectors(two);
  CHECK(w.vectors[0].entries.at("code") == doctest::Approx(1.0 / 3.0));
  CHECK(w.vectors[1].entries.at("code") == doctest::Approx(2.0 / 3.0));

  const std::vector<std::vector<std::string>> disjoint = {{"aaa"}, {"bbb"}, {}};
  const auto d = freq_vectors(disjoint);
  CHECK(d.vectors.size() == 2);
  CHECK(d.dropped == std::vector<std::size_t>{2});
  CHECK(freq_cosine(d.vectors[0], d.vectors[1]) == 0.0);
  for (const auto& fv : w.vectors) {
    for (const auto& [k, x] : fv.entries) {
      CHECK(x > 0.0);
      CHECK(x <= 1.0);
    }
  }
}

TEST_CASE("diversity filter basics") {
  const std::vector<std::string> s = {"remote attacker executes code", "remote attacker executes code again"};
  std::vector<std::vector<std::string>> toks;
  for (const auto& x : s) toks.push_back(sentence_tokens(x));
  const auto fv = freq_vectors(toks);
  const auto out = diversity_filter(s, fv.vectors, RefinePolicy{});
  REQUIRE_FALSE(out.empty());
  CHECK(out[0] == s[0]);
  CHECK(out.size() == 1);
}

TEST_CASE("diversity filter matches a brute-force greedy oracle") {
  const std::vector<std::string> s = {
      "buffer overflow in parser allows remote code execution",
      "parser crash triggers buffer overflow condition",
      "authentication bypass through crafted session cookie",
      "buffer overflow in parser allows remote code execution again",
      "session cookie validation missing in login handler"};
  std::vector<Counts> counts;
  Counts totals;
  std::vector<std::vector<std::string>> toks;
  for (const auto& x : s) {
    toks.push_back(sentence_tokens(x));
    Counts c;
    for (const auto& t : toks.back()) {
      c[t] += 1;
      totals[t] += 1;
    }
    counts.push_back(c);
  }
  std::vector<std::vector<double>> table(5, std::vector<double>(5));
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) table[i][j] = oracle_cosine(counts[i], counts[j], totals);
  }
  std::vector<std::string> expected;
  std::vector<int> kept;
  for (int i = 0; i < 5; ++i) {
    bool ok = true;
    for (int k : kept) ok = ok && table[i][k] < 0.5;
    if (ok) {
      kept.push_back(i);
      expected.push_back(s[i]);
    }
  }
  const auto fv = freq_vectors(toks);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) CHECK(freq_cosine(fv.vectors[i], fv.vectors[j]) == doctest::Approx(table[i][j]));
  }
  CHECK(diversity_filter(s, fv.vectors, RefinePolicy{}) == expected);
  CHECK(expected.size() < s.size());
}

TEST_CASE("word cap rejects sentences that would overflow the budget") {
  const std::vector<std::string> s = {"one two three", "four five six seven", "eight nine"};
  std::vector<std::vector<std::string>> toks = {{"aaa"}, {"bbb"}, {"ccc"}};
  const auto fv = freq_vectors(toks);
  RefinePolicy p;
  p.cap_words = 6;
  CHECK(diversity_filter(s, fv.vectors, p) == std::vector<std::string>{"one two three", "eight nine"});
}

TEST_CASE("refine_instance examples") {
  auto enc = make_encoder();
  const auto diverse = inst_with("Attackers bypass authentication. Heap memory gets corrupted.");
  const auto a = refine_instance(diverse, RefinePolicy{}, enc);
  REQUIRE(a);
  CHECK(a->augmented_text == diverse.augmented_text);
  CHECK(a->description == "target");
  CHECK(a->label == diverse.label);

  std::string repeated;
  for (int i = 0; i < 10; ++i) repeated += "The parser overflows its stack buffer. ";
  const auto b = refine_instance(inst_with(repeated), RefinePolicy{}, enc);
  REQUIRE(b);
  CHECK(b->augmented_text == "The parser overflows its stack buffer.");

  CHECK_FALSE(refine_instance(inst_with("The of and. It is."), RefinePolicy{}, enc));
}

TEST_CASE("capped refine on a 400-word instance stays within 250 words") {
  auto enc = make_encoder();
  std::string text;
  for (int i = 0; i < 50; ++i) {
    text += "w" + std::to_string(i) + "a w" + std::to_string(i) + "b w" + std::to_string(i) + "c w" +
            std::to_string(i) + "d w" + std::to_string(i) + "e w" + std::to_string(i) + "f w" +
            std::to_string(i) + "g w" + std::to_string(i) + "h. ";
  }
  REQUIRE(count_words(text) == 400);
  RefinePolicy p;
  p.cap_words = 250;
  const auto out = refine_instance(inst_with(text), p, enc);
  REQUIRE(out);
  CHECK(count_words(out->augmented_text) <= 250);
  CHECK(count_words(out->augmented_text) > 240);
}

TEST_CASE("refine is idempotent and keeps a subsequence of sentences") {
  auto enc = make_encoder();
  const auto inst = inst_with(
      "Buffer overflow in the parser allows remote code execution. The parser overflows a buffer. "
      "Buffer overflow in the parser allows remote code execution. Login form lacks rate limits. "
      "Rate limits are missing on the login form. Patch version 9.4.2 fixes the issue.");
  RefinePolicy p;
  const auto once = refine_instance(inst, p, enc);
  REQUIRE(once);
  const auto twice = refine_instance(*once, p, enc);
  REQUIRE(twice);
  CHECK(twice->augmented_text == once->augmented_text);

  const auto in_s = textprep::split_sentences(inst.augmented_text);
  const auto out_s = textprep::split_sentences(once->augmented_text);
  std::size_t k = 0;
  for (const auto& s : out_s) {
    const std::string body = s.back() == '.' ? s.substr(0, s.size() - 1) : s;
    while (k < in_s.size() && in_s[k] != body && in_s[k] != s) ++k;
    REQUIRE(k < in_s.size());
    ++k;
  }
  CHECK(out_s.size() < in_s.size());
}

TEST_CASE("refine_manifest stage transitions and drops") {
  auto enc = make_encoder();
  DatasetManifest m("m", GatePolicy::dual(), Stage::kRaw, "2026-01-01T00:00:00Z");
  m.add(inst_with("Heap overflow in image decoder. Crafted file triggers it."));
  auto empty = inst_with("It is. Of the.");
  empty.cve_id = "CVE-2020-0002";
  m.add(empty);
  const auto r = refine_manifest(m, RefinePolicy{}, enc);
  CHECK(r.manifest.stage == Stage::kRefined);
  CHECK(r.manifest.size() == 1);
  CHECK(r.warnings.size() == 1);

  RefinePolicy capped;
  capped.cap_words = 250;
  const auto c = refine_manifest(r.manifest, capped, enc);
  CHECK(c.manifest.stage == Stage::kRefinedCapped);
  CHECK_THROWS_AS(refine_manifest(c.manifest, RefinePolicy{}, enc), ValidationError);
}

TEST_CASE("corpus normalization uses corpus-wide denominators") {
  const std::vector<std::vector<std::string>> toks = {{"code"}};
  const WordTotals corpus = {{"code", 4.0}};
  const auto v = freq_vectors(toks, &corpus);
  CHECK(v.vectors[0].entries.at("code") == doctest::Approx(0.25));
}

TEST_CASE("policy validation") {
  RefinePolicy p;
  p.dedup_threshold = 0.0;
  CHECK_THROWS_AS(p.validate(), ValidationError);
  RefinePolicy q;
  q.cap_words = 0;
  CHECK_THROWS_AS(q.validate(), ValidationError);
}
