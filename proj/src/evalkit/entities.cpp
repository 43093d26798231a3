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

#include "vulnforge/evalkit/entities.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "vulnforge/core/error.hpp"
#include "vulnforge/textprep/tokens.hpp"

namespace vulnforge::data {
extern const char* const kEntitiesText;
}

namespace vulnforge::evalkit {
namespace {

std::string trim_punct(const std::string& tok) {
  std::size_t b = 0;
  std::size_t e = tok.size();
  while (b < e && std::ispunct(static_cast<unsigned char>(tok[b]))) ++b;
  while (e > b && std::ispunct(static_cast<unsigned char>(tok[e - 1]))) --e;
  return tok.substr(b, e - b);
}

std::vector<std::string> entity_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    auto t = trim_punct(tok);
    if (!t.empty()) out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

const std::vector<std::string>& bundled_gazetteer() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    std::istringstream in(data::kEntitiesText);
    std::string line;
    while (std::getline(in, line)) {
      while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
      if (!line.empty() && line.front() != '#') out.push_back(line);
    }
    return out;
  }();
  return names;
}

std::map<std::string, std::size_t> entity_counts(const std::vector<std::string>& texts,
                                                 const std::vector<std::string>& gazetteer) {
  std::vector<std::pair<std::string, std::vector<std::string>>> names;
  std::map<std::string, std::size_t> counts;
  for (const auto& name : gazetteer) {
    auto toks = entity_tokens(name);
    if (toks.empty()) throw ValidationError("gazetteer entries must be non-empty");
    names.emplace_back(name, std::move(toks));
    counts[name] = 0;
  }
  for (const auto& text : texts) {
    const auto toks = entity_tokens(text);
    for (const auto& [name, pattern] : names) {
      if (pattern.size() > toks.size()) continue;
      for (std::size_t i = 0; i + pattern.size() <= toks.size(); ++i) {
        if (std::equal(pattern.begin(), pattern.end(), toks.begin() + static_cast<std::ptrdiff_t>(i))) {
          ++counts[name];
        }
      }
    }
  }
  return counts;
}

std::vector<Trigram> trigram_counts(const std::vector<std::string>& texts, std::size_t top_n) {
  if (top_n == 0) throw ValidationError("top_n must be at least 1");
  std::map<std::string, std::size_t> counts;
  for (const auto& text : texts) {
    std::vector<std::string> toks;
    for (auto& t : textprep::word_tokens(text)) {
      if (!textprep::is_stopword(t)) toks.push_back(std::move(t));
    }
    for (std::size_t i = 0; i + 3 <= toks.size(); ++i) {
      ++counts[toks[i] + " " + toks[i + 1] + " " + toks[i + 2]];
    }
  }
  std::vector<Trigram> out;
  for (auto& [text, n] : counts) out.push_back({text, n});
  std::stable_sort(out.begin(), out.end(), [](const Trigram& a, const Trigram& b) { return a.count > b.count; });
  if (out.size() > top_n) out.resize(top_n);
  return out;
}

}  // namespace vulnforge::evalkit
