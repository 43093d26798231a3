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
#include <string>
#include <vector>

#include "vulnforge/textprep/clean.hpp"
#include "vulnforge/textprep/sentences.hpp"
#include "vulnforge/textprep/tokens.hpp"

using namespace vulnforge;
using namespace vulnforge::textprep;

namespace {

Paragraph paragraph_of(std::size_t words) {
  Paragraph p;
  for (std::size_t i = 0; i < words; ++i) p.raw += (i ? " w" : "w") + std::to_string(i);
  clean_paragraph(p);
  return p;
}

}  // namespace

TEST_CASE("clean removes urls and collapses whitespace") {
  CHECK(clean("See https://x.io/a  now") == "See now");
  CHECK(clean("go to www.example.com/path today") == "go to today");
}

TEST_CASE("clean removes emails and phone numbers") {
  CHECK(clean("mail me a@b.com or +1-407-823-1294") == "mail me or");
  CHECK(clean("call (407) 823 1294 now") == "call now");
}

TEST_CASE("clean keeps version strings and short digit runs") {
  CHECK(clean("PostgreSQL 9.4 before 9.4.2") == "PostgreSQL 9.4 before 9.4.2");
  CHECK(clean("port 8080 open") == "port 8080 open");
}

TEST_CASE("clean strips special characters outside the kept set") {
  CHECK(clean("a <script> & \"b\"") == "a script b");
  CHECK(clean("(foo) bar: baz; x-y, z/w 'q'") == "(foo) bar: baz; x-y, z/w 'q'");
}

TEST_CASE("clean fixed point and idempotence") {
  CHECK(clean("plain text") == "plain text");
  const std::vector<std::string> inputs = {
      "See https://x.io/a  now",
      "mail me a@b.com or +1-407-823-1294",
      "  tabs\tand\nnewlines  ",
      "weird @@ chars #$%^ and émigré text",
      "x@y.co,http://z.org;(555) 123-4567!!",
      "a@b.c@d.com"};
  for (const auto& s : inputs) {
    const auto once = clean(s);
    CHECK(clean(once) == once);
    CHECK(once.size() <= s.size());
  }
}

TEST_CASE("policy with no strip classes is identity") {
  CleanPolicy p;
  p.strip = 0;
  CHECK(clean("a  b https://x", p) == "a  b https://x");
}

TEST_CASE("length gate boundary") {
  CHECK_FALSE(passes_length_gate(paragraph_of(19)));
  CHECK(passes_length_gate(paragraph_of(20)));
  CHECK_FALSE(passes_length_gate(paragraph_of(0)));
  CHECK(paragraph_of(20).word_count == 20);
}

TEST_CASE("split_sentences examples") {
  CHECK(split_sentences("A b. C d.") == std::vector<std::string>{"A b", "C d."});
  CHECK(split_sentences("no period here") == std::vector<std::string>{"no period here"});
  CHECK(split_sentences("x. y. z") == std::vector<std::string>{"x", "y", "z"});
  CHECK(split_sentences("").empty());
}

TEST_CASE("split_sentences keeps decimals and drops empties") {
  CHECK(split_sentences("Version 9.4 is hit. Upgrade.") ==
        std::vector<std::string>{"Version 9.4 is hit", "Upgrade."});
  const auto parts = split_sentences("a. . b");
  for (const auto& s : parts) CHECK_FALSE(s.empty());
}

TEST_CASE("join inverts split on its own output") {
  for (const std::string text : {"A b. C d.", "x. y. z", "one", "One two. Three four five."}) {
    const auto parts = split_sentences(text);
    CHECK(join_sentences(parts) == text);
    CHECK(split_sentences(join_sentences(parts)) == parts);
  }
}

TEST_CASE("filter_tokens examples") {
  const std::vector<std::string> in = {"the", "xss", "is", "overflow"};
  CHECK(filter_tokens(in) == std::vector<std::string>{"xss", "overflow"});
  CHECK(filter_tokens(std::vector<std::string>{"ab"}).empty());
  CHECK(filter_tokens(std::vector<std::string>{std::string(21, 'a')}).empty());
  CHECK(filter_tokens(std::vector<std::string>{std::string(20, 'a')}).size() == 1);
}

TEST_CASE("filter_tokens output is a subsequence") {
  const std::vector<std::string> in = {"remote", "an", "attacker", "the", "could", "execute", "code"};
  const auto out = filter_tokens(in);
  auto it = in.begin();
  for (const auto& t : out) {
    it = std::find(it, in.end(), t);
    REQUIRE(it != in.end());
    ++it;
  }
}

TEST_CASE("bundled stop-word list") {
  CHECK(stopwords().size() == 179);
  CHECK(is_stopword("the"));
  CHECK(is_stopword("is"));
  CHECK_FALSE(is_stopword("overflow"));
}

TEST_CASE("word_tokens lowercases and trims punctuation") {
  CHECK(word_tokens("Hello, World! (XSS)") == std::vector<std::string>{"hello", "world", "xss"});
  CHECK(utf8_length("émigré") == 6);
}
