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
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "vulnforge/seq2seq/model.hpp"
#include "vulnforge/tokenize/token_index.hpp"

namespace vulnforge::seq2seq {

// Anything that scores the next token given a prefix.
class StepModel {
 public:
  virtual ~StepModel() = default;
  virtual std::size_t vocab_size() const = 0;
  // Unnormalised scores for the token after `prefix`.
  virtual std::vector<double> next_logits(std::span<const int> prefix) const = 0;
};

// Decoder over fixed encoder states.
class TransformerStepModel : public StepModel {
 public:
  TransformerStepModel(const Params& params, const ModelConfig& config, Matrix src_states);
  std::size_t vocab_size() const override;
  std::vector<double> next_logits(std::span<const int> prefix) const override;

 private:
  const Params* params_;
  const ModelConfig* config_;
  Matrix src_states_;
};

enum class Strategy { kGreedy, kBeam, kTopK, kNucleus };

struct DecodeConfig {
  Strategy strategy = Strategy::kBeam;
  int beams = 2;
  int top_k = 50;
  double top_p = 0.9;
  double length_penalty = 8.0;
  double repetition_penalty = 2.0;  // 1 disables
  std::uint64_t seed = 42;
  std::size_t max_len = 250;  // generated tokens, end token included
  int bos = tokenize::kBosId;
  int eos = tokenize::kEosId;

  void validate() const;
};

// Log-softmax of `logits`, with every token already in `generated` scaled by
// the repetition penalty (scores are <= 0, so they are multiplied).
std::vector<double> penalized_log_probs(std::span<const double> logits, std::span<const int> generated,
                                        double penalty);

// Score used to rank finished beam hypotheses.
double length_normalized(double sum_log_prob, std::size_t length, double alpha);

// Generated ids without the start token; ends with the end token unless
// max_len was reached first.
std::vector<int> generate_ids(const StepModel& model, const DecodeConfig& config);

std::string generate(const std::string& src_text, const Params& params, const ModelConfig& mcfg,
                     const tokenize::TokenIndex& index, const DecodeConfig& dcfg);

}  // namespace vulnforge::seq2seq
