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

#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "vulnforge/seq2seq/generate.hpp"

namespace vulnforge::testing {

// Five ids: pad, bos, eos, A, B. Distributions are fixed per generated prefix.
class ToyLm : public seq2seq::StepModel {
 public:
  static constexpr int kEos = 2;
  static constexpr int kA = 3;
  static constexpr int kB = 4;

  ToyLm() {
    table_[{}] = {0.1, 0.5, 0.4};
    table_[{kA}] = {0.33, 0.34, 0.33};
    table_[{kB}] = {0.9, 0.05, 0.05};
    table_[{kA, kA}] = {0.8, 0.1, 0.1};
    table_[{kA, kB}] = {0.2, 0.4, 0.4};
    table_[{kB, kA}] = {0.99, 0.005, 0.005};
    table_[{kB, kB}] = {0.5, 0.25, 0.25};
  }

  std::size_t vocab_size() const override { return 5; }

  // Probabilities over (eos, A, B) after the generated tokens.
  std::vector<double> dist(const std::vector<int>& generated) const {
    auto it = table_.find(generated);
    return it == table_.end() ? std::vector<double>{0.4, 0.3, 0.3} : it->second;
  }

  std::vector<double> next_logits(std::span<const int> prefix) const override {
    const std::vector<int> generated(prefix.begin() + 1, prefix.end());
    const auto p = dist(generated);
    return {-1e9, -1e9, std::log(p[0]), std::log(p[1]), std::log(p[2])};
  }

 private:
  std::map<std::vector<int>, std::vector<double>> table_;
};

// Best sequence under sum(log p) / len^alpha over every sequence the decoder
// may emit within `max_len` tokens: eos-terminated ones and unfinished ones of
// exactly `max_len`.
inline std::vector<int> exhaustive_best(const ToyLm& lm, std::size_t max_len, double alpha) {
  std::optional<std::vector<int>> best;
  double best_score = -std::numeric_limits<double>::infinity();
  std::function<void(std::vector<int>&, double)> walk = [&](std::vector<int>& seq, double lp) {
    for (int tok : {ToyLm::kEos, ToyLm::kA, ToyLm::kB}) {
      const auto p = lm.dist(seq);
      const double step = std::log(p[static_cast<std::size_t>(tok - ToyLm::kEos)]);
      seq.push_back(tok);
      const bool done = tok == ToyLm::kEos || seq.size() == max_len;
      if (done) {
        const double score = (lp + step) / std::pow(static_cast<double>(seq.size()), alpha);
        if (score > best_score) {
          best_score = score;
          best = seq;
        }
      } else {
        walk(seq, lp + step);
      }
      seq.pop_back();
    }
  };
  std::vector<int> seq;
  walk(seq, 0.0);
  return *best;
}

}  // namespace vulnforge::testing
