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
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "vulnforge/tokenize/vocab.hpp"

namespace vulnforge::testing {

// Plain pair-counting trainer over characters: word-initial symbols carry the
// word marker, the most frequent adjacent pair wins and ties go to the
// lexicographically smallest (left, right).
inline std::vector<std::pair<std::string, std::string>> oracle_bpe_merges(
    const std::vector<std::string>& corpus, std::size_t max_merges, std::size_t min_count = 2) {
  std::map<std::string, std::size_t> freq;
  for (const auto& text : corpus) {
    std::istringstream in(text);
    std::string w;
    while (in >> w) ++freq[w];
  }
  std::vector<std::pair<std::vector<std::string>, std::size_t>> words;
  for (const auto& [w, n] : freq) {
    std::vector<std::string> syms;
    for (std::size_t i = 0; i < w.size(); ++i) {
      syms.push_back((i == 0 ? std::string(tokenize::kWordMarker) : std::string()) + w[i]);
    }
    words.emplace_back(syms, n);
  }
  std::vector<std::pair<std::string, std::string>> merges;
  while (merges.size() < max_merges) {
    std::map<std::pair<std::string, std::string>, std::size_t> counts;
    for (const auto& [syms, n] : words) {
      for (std::size_t i = 0; i + 1 < syms.size(); ++i) counts[{syms[i], syms[i + 1]}] += n;
    }
    std::pair<std::string, std::string> best;
    std::size_t best_n = 0;
    for (const auto& [p, n] : counts) {
      if (n > best_n || (n == best_n && p < best)) {
        best = p;
        best_n = n;
      }
    }
    if (best_n < min_count) break;
    merges.push_back(best);
    for (auto& [syms, n] : words) {
      std::vector<std::string> out;
      for (std::size_t i = 0; i < syms.size(); ++i) {
        if (i + 1 < syms.size() && syms[i] == best.first && syms[i + 1] == best.second) {
          out.push_back(best.first + best.second);
          ++i;
        } else {
          out.push_back(syms[i]);
        }
      }
      syms = out;
    }
  }
  return merges;
}

inline std::vector<std::string> bpe_toy_corpus() {
  std::vector<std::string> corpus;
  for (int i = 0; i < 5; ++i) corpus.push_back("low");
  for (int i = 0; i < 2; ++i) corpus.push_back("lower");
  for (int i = 0; i < 6; ++i) corpus.push_back("newest");
  for (int i = 0; i < 3; ++i) corpus.push_back("widest");
  return corpus;
}

}  // namespace vulnforge::testing
