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
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "vulnforge/core/manifest.hpp"
#include "vulnforge/seq2seq/model.hpp"
#include "vulnforge/tokenize/token_index.hpp"

namespace vulnforge::seq2seq {

struct SplitIndices {
  std::vector<std::size_t> train, val, test;
};

// Seeded shuffle, then test_frac of the whole for test and val_frac of the
// remainder for validation (both rounded to nearest).
SplitIndices split_indices(std::size_t n, const TrainConfig& tcfg);

class Adam {
 public:
  explicit Adam(const Params& shape, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);
  void step(Params& params, const Params& grad, double lr);
  std::size_t steps() const { return t_; }

 private:
  Params m_, v_;
  double beta1_, beta2_, eps_;
  std::size_t t_ = 0;
};

struct EvalStats {
  double mean_loss = 0.0;  // per target token
  double token_accuracy = 0.0;
  std::size_t tokens = 0;
};
EvalStats evaluate(std::span<const Example> examples, const Params& params, const ModelConfig& config);

// Mean per-token loss and its gradient over a batch.
double batch_gradient(std::span<const Example> batch, const Params& params, const ModelConfig& config,
                      Params& grad);

struct TrainResult {
  Params params;
  std::vector<double> train_loss;  // per epoch, mean per token
  std::vector<double> val_loss;
  std::vector<double> val_accuracy;
  std::size_t steps = 0;
};

// Called after every optimizer step with the step count and batch loss.
using StepCallback = std::function<void(std::size_t step, double loss)>;

// Adam over shuffled mini-batches, `epochs` passes or until max_steps.
// Deterministic given tcfg.seed and mcfg.seed.
TrainResult train_examples(std::span<const Example> train, std::span<const Example> val,
                           const ModelConfig& mcfg, const TrainConfig& tcfg,
                           std::optional<Params> initial = std::nullopt,
                           const StepCallback& on_step = {});

enum class TargetField { kDescription, kLabel };

struct DatasetTrainResult {
  TrainResult result;
  SplitIndices split;
  std::vector<Example> examples;  // aligned with the used instances
  std::vector<std::size_t> instance_of;  // example -> manifest position
};

// Builds examples from augmented_text -> target, splits and trains. Throws
// ValidationError on an empty dataset or when no instance carries a label.
DatasetTrainResult train(const DatasetManifest& dataset, TargetField field,
                         const tokenize::TokenIndex& index, const TrainConfig& tcfg,
                         ModelConfig mcfg);

}  // namespace vulnforge::seq2seq
