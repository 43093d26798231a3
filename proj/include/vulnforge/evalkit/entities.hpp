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
#include <utility>
#include <vector>

namespace vulnforge::evalkit {

// Entity names bundled from data/entities.txt, in file order.
const std::vector<std::string>& bundled_gazetteer();

// Case-sensitive whole-token occurrences of each name summed over texts.
// Multi-word names match as consecutive tokens. Tokens are whitespace
// separated with leading and trailing punctuation ignored. Every name gets
// an entry, including zero counts. Throws ValidationError on an empty name.
std::map<std::string, std::size_t> entity_counts(const std::vector<std::string>& texts,
                                                 const std::vector<std::string>& gazetteer);

struct Trigram {
  std::string text;  // three tokens joined by single spaces
  std::size_t count = 0;
  bool operator==(const Trigram&) const = default;
};

// Trigrams over lowercased, stop-word-free tokens of each text, most
// frequent first, ties in lexicographic order. Throws ValidationError when
// top_n is zero.
std::vector<Trigram> trigram_counts(const std::vector<std::string>& texts, std::size_t top_n);

}  // namespace vulnforge::evalkit
