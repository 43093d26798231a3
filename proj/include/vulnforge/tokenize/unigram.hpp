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
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "vulnforge/tokenize/vocab.hpp"

namespace vulnforge::tokenize {

// Sum of token log-probabilities (the log of the product of the token
// probabilities). Throws ValidationError for a token outside the vocabulary.
double unigram_prob(std::span<const std::string> tokens, const SubwordVocab& vocab);

// Highest-scoring segmentation of `word` by dynamic programming over split
// points. Ties go to fewer tokens, then to the longest leftmost token.
// Throws ValidationError when the word cannot be covered.
std::vector<std::string> best_segmentation(std::string_view word, const SubwordVocab& vocab);

// A corpus as (marked word, frequency) pairs.
struct WordCount {
  std::string word;
  double count = 0.0;
};
std::vector<WordCount> unigram_words(std::span<const std::string> corpus);

// Corpus log-likelihood under best segmentations.
double corpus_log_likelihood(const SubwordVocab& vocab, std::span<const WordCount> words);

// Log-likelihood lost when `token` is removed (probabilities of the other
// tokens unchanged). Always >= 0. Throws ValidationError for single
// characters and for tokens outside the vocabulary.
double removal_loss(const SubwordVocab& vocab, const std::string& token,
                    std::span<const std::string> corpus);

// Re-estimates probabilities from best-segmentation counts, `rounds` times.
void reestimate(SubwordVocab& vocab, std::span<const WordCount> words, int rounds = 2);

// Drops the lowest-loss tenth (at least one) of the multi-character tokens
// and re-estimates, until the vocabulary fits size_limit. Characters are
// never dropped. Throws ValidationError if size_limit is below the number of
// characters.
SubwordVocab prune_unigram(SubwordVocab vocab, std::span<const std::string> corpus,
                           std::size_t size_limit);

// Seeds with every character plus substrings of up to 6 characters seen at
// least twice, initialised from relative frequency, then prunes.
SubwordVocab train_unigram(std::span<const std::string> corpus, std::size_t size_limit);

}  // namespace vulnforge::tokenize
