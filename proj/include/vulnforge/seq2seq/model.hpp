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
#include <vector>

#include "vulnforge/seq2seq/params.hpp"

namespace vulnforge::seq2seq {

// One training pair in token ids. `src` is what the encoder reads; `tgt` is
// the target without start or end tokens.
struct Example {
  std::vector<int> src;
  std::vector<int> tgt;
};

// Truncates to the configured caps and appends the end token to the source.
Example make_example(std::vector<int> src, std::vector<int> tgt, const ModelConfig& config);

// Encoder hidden states, n x d_model. `offset` shifts absolute positions.
// Throws ValidationError for empty or over-long input and for ids >= |V|.
Matrix encode_src(std::span<const int> src, const Params& params, const ModelConfig& config,
                  int offset = 0);

// Decoder logits for every prefix position, n x |V|.
Matrix decode_logits(std::span<const int> tgt_in, const Matrix& src_states, const Params& params,
                     const ModelConfig& config, int offset = 0);

// Next-token distribution after `prefix`, which must start with the start
// token.
std::vector<double> decode_step(std::span<const int> prefix, const Matrix& src_states,
                                const Params& params, const ModelConfig& config);

struct LossStats {
  double nll = 0.0;  // summed over target tokens
  std::size_t tokens = 0;
  std::size_t correct = 0;  // teacher-forced argmax hits
};

// Teacher-forced cross-entropy of one pair. When `grad` is non-null the
// gradient of grad_scale * nll is accumulated into it.
LossStats example_loss(const Example& ex, const Params& params, const ModelConfig& config,
                       Params* grad = nullptr, double grad_scale = 1.0);

}  // namespace vulnforge::seq2seq
