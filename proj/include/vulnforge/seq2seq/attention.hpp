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

#include <optional>
#include <vector>

#include "vulnforge/seq2seq/params.hpp"

namespace vulnforge::seq2seq {

using Mask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

// softmax(Q K^T / sqrt(d_k)) V. Entries of `blocked` that are true get score
// -infinity. Throws ShapeError on mismatched shapes and ValidationError when
// a row is fully blocked.
Matrix attention(const Matrix& q, const Matrix& k, const Matrix& v,
                 const std::optional<Mask>& blocked = std::nullopt);

// Attention weights for the same inputs (rows sum to one).
Matrix attention_weights(const Matrix& q, const Matrix& k,
                         const std::optional<Mask>& blocked = std::nullopt);

// Clipped relative-distance row for query i and key j.
inline int relative_index(Eigen::Index i, Eigen::Index j) {
  auto r = static_cast<int>(j - i);
  if (r < -kRelativeWindow) r = -kRelativeWindow;
  if (r > kRelativeWindow) r = kRelativeWindow;
  return r + kRelativeWindow;
}

struct AttentionCache {
  Matrix xq, xkv, q, k, v, z;
  std::vector<Matrix> weights;  // one n_q x n_k matrix per head
};

// Multi-head attention with an output projection. Relative tables are used
// when present. `causal` blocks keys after the query position.
Matrix multi_head_attention(const AttentionParams& p, const Matrix& xq, const Matrix& xkv, int heads,
                            bool causal, AttentionCache* cache);

// Accumulates parameter gradients; adds the input gradients to dxq and dxkv
// (which must be pre-sized).
void multi_head_attention_backward(const AttentionCache& cache, const AttentionParams& p, int heads,
                                   const Matrix& dy, AttentionParams& grad, Matrix& dxq,
                                   Matrix& dxkv);

}  // namespace vulnforge::seq2seq
