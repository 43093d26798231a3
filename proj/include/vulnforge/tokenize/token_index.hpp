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
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "vulnforge/tokenize/vocab.hpp"

namespace vulnforge::tokenize {

// Integer ids for a vocabulary. Ids 0..3 are reserved for the special
// tokens; vocabulary tokens follow in vocabulary order.
inline constexpr int kPadId = 0;
inline constexpr int kBosId = 1;
inline constexpr int kEosId = 2;
inline constexpr int kUnkId = 3;
inline constexpr int kNumSpecial = 4;

class TokenIndex {
 public:
  explicit TokenIndex(SubwordVocab vocab);

  std::size_t size() const { return id_to_token_.size(); }
  const SubwordVocab& vocab() const { return vocab_; }

  int id(const std::string& token) const;  // kUnkId when absent
  const std::string& token(int id) const;

  std::vector<int> encode(std::string_view text) const;
  // Specials other than the unk token are skipped.
  std::string decode(const std::vector<int>& ids) const;

 private:
  SubwordVocab vocab_;
  std::vector<std::string> id_to_token_;
  std::unordered_map<std::string, int> token_to_id_;
};

}  // namespace vulnforge::tokenize
