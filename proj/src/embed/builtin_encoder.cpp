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

#include "vulnforge/embed/encoder.hpp"

namespace vulnforge::embed {
namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;
constexpr std::uint64_t kSeed = 0x5bd1e9955bd1e995ULL;

std::uint64_t mix64(std::uint64_t z) {
  z ^= z >> 30;
  z *= 0xbf58476d1ce4e5b9ULL;
  z ^= z >> 27;
  z *= 0x94d049bb133111ebULL;
  z ^= z >> 31;
  return z;
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace

BuiltinEncoder::BuiltinEncoder(EncoderSpec spec) : spec_(std::move(spec)) { spec_.validate(); }

std::uint64_t BuiltinEncoder::token_hash(std::string_view token) {
  std::uint64_t h = kFnvOffset ^ kSeed;
  for (char c : token) {
    const auto lc = static_cast<unsigned char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
    h ^= lc;
    h *= kFnvPrime;
  }
  return mix64(h);
}

std::vector<EmbeddingVector> BuiltinEncoder::encode(std::span<const std::string> texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& text : texts) {
    std::vector<double> v(spec_.dimension, 0.0);
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && is_space(text[i])) ++i;
      std::size_t j = i;
      while (j < text.size() && !is_space(text[j])) ++j;
      if (j > i) {
        const auto h = token_hash(std::string_view(text).substr(i, j - i));
        v[h % spec_.dimension] += (h >> 63) ? -1.0 : 1.0;
      }
      i = j;
    }
    l2_normalize(v);
    out.push_back({std::move(v), spec_.encoder_id});
  }
  return out;
}

}  // namespace vulnforge::embed
