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

#include "vulnforge/evalkit/stats.hpp"

#include <cmath>

#include "vulnforge/core/types.hpp"
#include "vulnforge/textprep/sentences.hpp"
#include "vulnforge/textprep/tokens.hpp"

namespace vulnforge::evalkit {
namespace {

MeanStd mean_std(const std::vector<double>& xs) {
  MeanStd out;
  if (xs.empty()) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / static_cast<double>(xs.size());
  double sq = 0.0;
  for (double x : xs) sq += (x - out.mean) * (x - out.mean);
  out.std = std::sqrt(sq / static_cast<double>(xs.size()));
  return out;
}

}  // namespace

std::size_t length_bucket(std::size_t words) {
  if (words <= 25) return 0;
  if (words > 200) return kLengthBuckets - 1;
  return (words - 1) / 25;
}

std::string length_bucket_label(std::size_t bucket) {
  if (bucket == 0) return "0-25";
  if (bucket >= kLengthBuckets - 1) return ">200";
  return std::to_string(bucket * 25 + 1) + "-" + std::to_string((bucket + 1) * 25);
}

CorpusStats corpus_stats(const std::vector<std::string>& texts) {
  CorpusStats out;
  out.texts = texts.size();
  std::vector<double> words, chars, sentences;
  for (const auto& t : texts) {
    const auto w = count_words(t);
    words.push_back(static_cast<double>(w));
    chars.push_back(static_cast<double>(textprep::utf8_length(t)));
    sentences.push_back(static_cast<double>(textprep::split_sentences(t).size()));
    ++out.histogram[length_bucket(w)];
  }
  out.words = mean_std(words);
  out.chars = mean_std(chars);
  out.sentences = mean_std(sentences);
  return out;
}

}  // namespace vulnforge::evalkit
