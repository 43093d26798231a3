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

#include "vulnforge/tokenize/token_index.hpp"

#include "vulnforge/core/error.hpp"

namespace vulnforge::tokenize {

TokenIndex::TokenIndex(SubwordVocab vocab) : vocab_(std::move(vocab)) {
  id_to_token_ = {"<pad>", "<s>", "</s>", vocab_.unk_token};
  for (const auto& t : vocab_.tokens) {
    if (t == vocab_.unk_token || t == "<pad>" || t == "<s>" || t == "</s>") continue;
    id_to_token_.push_back(t);
  }
  for (std::size_t i = 0; i < id_to_token_.size(); ++i) {
    token_to_id_.emplace(id_to_token_[i], static_cast<int>(i));
  }
}

int TokenIndex::id(const std::string& token) const {
  auto it = token_to_id_.find(token);
  return it == token_to_id_.end() ? kUnkId : it->second;
}

const std::string& TokenIndex::token(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= id_to_token_.size()) {
    throw ValidationError("token id out of range: " + std::to_string(id));
  }
  return id_to_token_[static_cast<std::size_t>(id)];
}

std::vector<int> TokenIndex::encode(std::string_view text) const {
  std::vector<int> out;
  for (const auto& t : tokenize_map(text, vocab_)) out.push_back(id(t));
  return out;
}

std::string TokenIndex::decode(const std::vector<int>& ids) const {
  std::vector<std::string> tokens;
  for (int i : ids) {
    if (i == kPadId || i == kBosId || i == kEosId) continue;
    tokens.push_back(token(i));
  }
  return detokenize(tokens, vocab_);
}

}  // namespace vulnforge::tokenize
