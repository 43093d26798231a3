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
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "vulnforge/tokenize/vocab.hpp"

namespace vulnforge::tokenize {

// Bytes are mapped to printable symbols (printable ASCII and most of
// Latin-1 map to themselves, the rest to U+0100 and up) so that every token
// is valid UTF-8 text.
std::string byte_symbol(unsigned char byte);
// Reverses byte_symbol over a run of symbols; the word marker becomes a
// space. Returns false if an unknown symbol is met.
bool symbols_to_bytes(std::string_view symbols, std::string& out);

// Initial symbols of a word: one per byte, the first carrying the marker.
std::vector<std::string> initial_symbols(std::string_view word);

struct BpeOptions {
  // Pairs seen fewer times than this are never merged.
  std::size_t min_pair_count = 2;
};

// Base vocabulary = distinct initial symbols of the corpus words. Then the
// most frequent adjacent pair (ties: smallest (left, right)) is merged until
// the vocabulary reaches size_limit or no pair reaches min_pair_count.
// Throws ValidationError if size_limit is below the base alphabet size.
SubwordVocab train_bpe(std::span<const std::string> corpus, std::size_t size_limit,
                       const BpeOptions& options = {});

// Applies merges by rank to pre-split symbols.
class BpeModel {
 public:
  explicit BpeModel(const SubwordVocab& vocab);

  std::vector<std::string> encode_word(std::string_view word) const;
  // Merges applied to an explicit symbol sequence (no unk handling).
  std::vector<std::string> apply_merges(std::vector<std::string> symbols) const;

 private:
  const SubwordVocab* vocab_;
  std::map<std::pair<std::string, std::string>, std::size_t> ranks_;
  std::unordered_set<std::string> known_;
};

}  // namespace vulnforge::tokenize
