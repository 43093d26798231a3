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

#include <cctype>
#include <sstream>

#include "vulnforge/textprep/tokens.hpp"

namespace vulnforge::data {
extern const char* const kStopwordsText;
}

namespace vulnforge::textprep {

const std::unordered_set<std::string>& stopwords() {
  static const std::unordered_set<std::string> kWords = [] {
    std::unordered_set<std::string> words;
    std::istringstream in(data::kStopwordsText);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty()) words.insert(line);
    }
    return words;
  }();
  return kWords;
}

bool is_stopword(std::string_view token) { return stopwords().count(std::string(token)) != 0; }

std::size_t utf8_length(std::string_view s) {
  std::size_t n = 0;
  for (unsigned char c : s) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::string ascii_lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

namespace {

bool is_ascii_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_ascii_punct(unsigned char c) {
  return c < 0x80 && !is_ascii_space(c) && !std::isalnum(c);
}

}  // namespace

std::vector<std::string> word_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_ascii_space(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_ascii_space(static_cast<unsigned char>(text[j]))) ++j;
    std::size_t b = i;
    std::size_t e = j;
    while (b < e && is_ascii_punct(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && is_ascii_punct(static_cast<unsigned char>(text[e - 1]))) --e;
    if (e > b) out.push_back(ascii_lower(text.substr(b, e - b)));
    i = j;
  }
  return out;
}

std::vector<std::string> filter_tokens(std::span<const std::string> tokens) {
  std::vector<std::string> out;
  for (const auto& t : tokens) {
    const auto len = utf8_length(t);
    if (len < 3 || len > 20 || is_stopword(t)) continue;
    out.push_back(t);
  }
  return out;
}

}  // namespace vulnforge::textprep
