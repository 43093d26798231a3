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

#include "vulnforge/evalkit/rouge.hpp"

#include <algorithm>
#include <unordered_map>

namespace vulnforge::evalkit {
namespace {

bool is_word_byte(unsigned char c) {
  return c >= 0x80 || (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

}  // namespace

std::vector<std::string> rouge_tokens(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    const auto c = static_cast<unsigned char>(ch);
    if (is_word_byte(c)) {
      cur += (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : ch;
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

RougeScore rouge1(std::string_view generated, std::string_view target) {
  const auto gen = rouge_tokens(generated);
  const auto tgt = rouge_tokens(target);
  std::unordered_map<std::string, std::size_t> tgt_counts;
  for (const auto& t : tgt) ++tgt_counts[t];
  std::unordered_map<std::string, std::size_t> gen_counts;
  for (const auto& t : gen) ++gen_counts[t];
  std::size_t overlap = 0;
  for (const auto& [tok, n] : gen_counts) {
    auto it = tgt_counts.find(tok);
    if (it != tgt_counts.end()) overlap += std::min(n, it->second);
  }
  RougeScore s;
  if (!tgt.empty()) s.recall = static_cast<double>(overlap) / static_cast<double>(tgt.size());
  if (!gen.empty()) s.precision = static_cast<double>(overlap) / static_cast<double>(gen.size());
  if (s.precision + s.recall > 0.0) s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

}  // namespace vulnforge::evalkit
