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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vulnforge/core/manifest.hpp"
#include "vulnforge/embed/encoder.hpp"

namespace vulnforge::refine {

// Word -> count in one sentence / count of the word in the reference text.
struct FreqVector {
  std::map<std::string, double> entries;

  bool operator==(const FreqVector&) const = default;
};

enum class Normalization {
  kPerInstance,  // denominators from the instance's own sentences
  kCorpus,       // denominators from every instance of the manifest
};

struct RefinePolicy {
  double dedup_threshold = 0.98;
  double diversity_threshold = 0.5;
  std::optional<std::size_t> cap_words;  // 250 for the capped variant
  Normalization normalization = Normalization::kPerInstance;

  void validate() const;
};

// Greedy forward pass: a sentence survives iff its embedding cosine with
// every previously kept sentence is below `threshold`. Trailing periods are
// ignored when embedding.
std::vector<std::string> dedup_sentences(std::span<const std::string> sentences,
                                         embed::Encoder& encoder, double threshold);

// Filtered tokens of a sentence (lowercase, stop-words and length bounds
// removed).
std::vector<std::string> sentence_tokens(const std::string& sentence);

using WordTotals = std::map<std::string, double>;

WordTotals word_totals(std::span<const std::vector<std::string>> token_lists);

struct FreqVectors {
  std::vector<FreqVector> vectors;
  std::vector<std::size_t> kept;     // input positions with a vector
  std::vector<std::size_t> dropped;  // input positions empty after filtering
};

// One vector per non-empty token list. `totals` defaults to the counts over
// the given lists.
FreqVectors freq_vectors(std::span<const std::vector<std::string>> token_lists,
                         const WordTotals* totals = nullptr);

double freq_cosine(const FreqVector& a, const FreqVector& b);

// Greedy forward pass: a candidate is kept iff its cosine with every kept
// vector is below the diversity threshold and, when capped, the running
// word total stays within cap_words.
std::vector<std::string> diversity_filter(std::span<const std::string> sentences,
                                          std::span<const FreqVector> vectors,
                                          const RefinePolicy& policy);

// Runs dedup, token filtering, frequency vectors and the diversity filter,
// repeating the last three on the survivors until nothing more is removed,
// so that a second application is a no-op. Returns nullopt when no sentence
// survives. Description, label and sources are untouched.
std::optional<AugmentedInstance> refine_instance(const AugmentedInstance& inst,
                                                 const RefinePolicy& policy,
                                                 embed::Encoder& encoder,
                                                 const WordTotals* corpus_totals = nullptr);

struct RefineOutcome {
  DatasetManifest manifest;
  std::vector<std::string> warnings;
};

// Refines every instance. The result's stage is refined, or refined_capped
// when a cap is set.
RefineOutcome refine_manifest(const DatasetManifest& in, const RefinePolicy& policy,
                              embed::Encoder& encoder);

}  // namespace vulnforge::refine
