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

#include "vulnforge/seq2seq/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vulnforge/core/error.hpp"
#include "vulnforge/core/rng.hpp"

namespace vulnforge::seq2seq {

SplitIndices split_indices(std::size_t n, const TrainConfig& tcfg) {
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(tcfg.seed);
  shuffle(std::span<std::size_t>(order), rng);
  const auto n_test = static_cast<std::size_t>(std::llround(static_cast<double>(n) * tcfg.test_frac));
  const auto rest = n - n_test;
  const auto n_val = static_cast<std::size_t>(std::llround(static_cast<double>(rest) * tcfg.val_frac));
  SplitIndices s;
  s.test.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_test));
  s.val.assign(order.begin() + static_cast<std::ptrdiff_t>(n_test),
               order.begin() + static_cast<std::ptrdiff_t>(n_test + n_val));
  s.train.assign(order.begin() + static_cast<std::ptrdiff_t>(n_test + n_val), order.end());
  return s;
}

Adam::Adam(const Params& shape, double beta1, double beta2, double eps)
    : m_(zeros_like(shape)), v_(zeros_like(shape)), beta1_(beta1), beta2_(beta2), eps_(eps) {}

void Adam::step(Params& params, const Params& grad, double lr) {
  ++t_;
  const double c1 = 1.0 - std::pow(beta1_, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(beta2_, static_cast<double>(t_));
  std::vector<Matrix*> p_list, m_list, v_list;
  std::vector<const Matrix*> g_list;
  visit_params(params, [&](const std::string&, Matrix& x) { p_list.push_back(&x); });
  visit_params(m_, [&](const std::string&, Matrix& x) { m_list.push_back(&x); });
  visit_params(v_, [&](const std::string&, Matrix& x) { v_list.push_back(&x); });
  visit_params(grad, [&](const std::string&, const Matrix& x) { g_list.push_back(&x); });
  for (std::size_t i = 0; i < p_list.size(); ++i) {
    auto& m = *m_list[i];
    auto& v = *v_list[i];
    const auto& g = *g_list[i];
    m = beta1_ * m + (1.0 - beta1_) * g;
    v = beta2_ * v + (1.0 - beta2_) * g.cwiseProduct(g);
    if (lr == 0.0) continue;
    p_list[i]->array() -= lr * (m.array() / c1) / ((v.array() / c2).sqrt() + eps_);
  }
}

EvalStats evaluate(std::span<const Example> examples, const Params& params, const ModelConfig& config) {
  EvalStats out;
  double nll = 0.0;
  std::size_t correct = 0;
  for (const auto& ex : examples) {
    const auto s = example_loss(ex, params, config);
    nll += s.nll;
    correct += s.correct;
    out.tokens += s.tokens;
  }
  if (out.tokens > 0) {
    out.mean_loss = nll / static_cast<double>(out.tokens);
    out.token_accuracy = static_cast<double>(correct) / static_cast<double>(out.tokens);
  }
  return out;
}

double batch_gradient(std::span<const Example> batch, const Params& params, const ModelConfig& config,
                      Params& grad) {
  std::size_t tokens = 0;
  for (const auto& ex : batch) tokens += ex.tgt.size() + 1;
  const double scale = 1.0 / static_cast<double>(tokens);
  double nll = 0.0;
  for (const auto& ex : batch) nll += example_loss(ex, params, config, &grad, scale).nll;
  return nll * scale;
}

TrainResult train_examples(std::span<const Example> train, std::span<const Example> val,
                           const ModelConfig& mcfg, const TrainConfig& tcfg,
                           std::optional<Params> initial, const StepCallback& on_step) {
  mcfg.validate();
  tcfg.validate();
  if (train.empty()) throw ValidationError("training set is empty");
  TrainResult out;
  out.params = initial ? std::move(*initial) : init_params(mcfg);
  Adam adam(out.params);
  Rng rng(tcfg.seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::size_t> order(train.size());
  std::iota(order.begin(), order.end(), 0);
  const auto batch = static_cast<std::size_t>(tcfg.batch_size);

  for (int epoch = 0; epoch < tcfg.epochs; ++epoch) {
    if (tcfg.max_steps && out.steps >= *tcfg.max_steps) break;
    shuffle(std::span<std::size_t>(order), rng);
    double epoch_nll = 0.0;
    std::size_t epoch_batches = 0;
    for (std::size_t start = 0; start < order.size(); start += batch) {
      if (tcfg.max_steps && out.steps >= *tcfg.max_steps) break;
      std::vector<Example> items;
      for (std::size_t i = start; i < std::min(order.size(), start + batch); ++i) items.push_back(train[order[i]]);
      Params grad = zeros_like(out.params);
      const double loss = batch_gradient(items, out.params, mcfg, grad);
      adam.step(out.params, grad, tcfg.lr);
      ++out.steps;
      epoch_nll += loss;
      ++epoch_batches;
      if (on_step) on_step(out.steps, loss);
    }
    out.train_loss.push_back(epoch_batches ? epoch_nll / static_cast<double>(epoch_batches) : 0.0);
    const auto v = evaluate(val, out.params, mcfg);
    out.val_loss.push_back(v.mean_loss);
    out.val_accuracy.push_back(v.token_accuracy);
  }
  return out;
}

DatasetTrainResult train(const DatasetManifest& dataset, TargetField field,
                         const tokenize::TokenIndex& index, const TrainConfig& tcfg, ModelConfig mcfg) {
  tcfg.validate();
  if (dataset.empty()) throw ValidationError("cannot train on an empty dataset");
  mcfg.vocab_size = static_cast<int>(index.size());
  DatasetTrainResult out;
  const auto& instances = dataset.instances();
  for (std::size_t i = 0; i < instances.size(); ++i) {
    const auto& inst = instances[i];
    const std::string* target = &inst.description;
    if (field == TargetField::kLabel) {
      if (!inst.label) continue;
      target = &*inst.label;
    }
    out.examples.push_back(make_example(index.encode(inst.augmented_text), index.encode(*target), mcfg));
    out.instance_of.push_back(i);
  }
  if (out.examples.empty()) throw ValidationError("no instance carries a label");
  out.split = split_indices(out.examples.size(), tcfg);
  std::vector<Example> tr, va;
  for (auto i : out.split.train) tr.push_back(out.examples[i]);
  for (auto i : out.split.val) va.push_back(out.examples[i]);
  if (tr.empty()) throw ValidationError("training split is empty");
  out.result = train_examples(tr, va, mcfg, tcfg);
  return out;
}

}  // namespace vulnforge::seq2seq
