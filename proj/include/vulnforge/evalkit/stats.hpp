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

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace vulnforge::evalkit {

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  // population
};

// Word-count buckets 0-25, 26-50, ..., 176-200, >200.
inline constexpr std::size_t kLengthBuckets = 9;
std::size_t length_bucket(std::size_t words);
std::string length_bucket_label(std::size_t bucket);

struct CorpusStats {
  std::size_t texts = 0;
  MeanStd words;      // whitespace tokens
  MeanStd chars;      // code points
  MeanStd sentences;  // textprep sentence split
  std::array<std::size_t, kLengthBuckets> histogram{};
};

CorpusStats corpus_stats(const std::vector<std::string>& texts);

}  // namespace vulnforge::evalkit
