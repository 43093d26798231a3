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

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

namespace vulnforge::tokenize {

// U+2581, prefixed to the first symbol of every word.
inline constexpr std::string_view kWordMarker = "\xE2\x96\x81";
inline constexpr std::string_view kDefaultUnk = "<UNK>";

enum class VocabKind { kBpe, kUnigram };

struct SubwordVocab {
  VocabKind kind = VocabKind::kBpe;
  std::vector<std::string> tokens;                             // ordered set D
  std::vector<std::pair<std::string, std::string>> merges;     // bpe only
  std::map<std::string, double> logprob;                       // unigram only
  std::string unk_token = std::string(kDefaultUnk);
  std::size_t size_limit = 0;

  bool contains(const std::string& token) const;
  bool operator==(const SubwordVocab&) const = default;
};

// Throws ValidationError when an invariant does not hold.
void validate_vocab(const SubwordVocab& vocab);

void to_json(nlohmann::json& j, const SubwordVocab& v);
void from_json(const nlohmann::json& j, SubwordVocab& v);
void save_vocab(const std::string& path, const SubwordVocab& vocab);
SubwordVocab load_vocab(const std::string& path);

// Whitespace-separated words of `text`.
std::vector<std::string> split_words(std::string_view text);

// Splits `text` into vocabulary tokens, one word at a time. Characters the
// vocabulary cannot cover become the unk token.
std::vector<std::string> tokenize_map(std::string_view text, const SubwordVocab& vocab);

// Inverse of tokenize_map for text with single spaces between words.
std::string detokenize(const std::vector<std::string>& tokens, const SubwordVocab& vocab);

// UTF-8 code points of `s` as separate strings. Invalid bytes become
// one-byte strings.
std::vector<std::string> utf8_chars(std::string_view s);

}  // namespace vulnforge::tokenize
