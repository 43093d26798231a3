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

#include "vulnforge/seq2seq/generate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "vulnforge/core/error.hpp"
#include "vulnforge/core/rng.hpp"

namespace vulnforge::seq2seq {
namespace {

struct Hypothesis {
  std::vector<int> ids;  // generated tokens only
  double log_prob = 0.0;
};

std::vector<int> with_bos(int bos, const std::vector<int>& ids) {
  std::vector<int> prefix{bos};
  prefix.insert(prefix.end(), ids.begin(), ids.end());
  return prefix;
}

std::vector<double> step_scores(const StepModel& model, const DecodeConfig& cfg,
                                const std::vector<int>& ids) {
  const auto logits = model.next_logits(with_bos(cfg.bos, ids));
  if (logits.size() != model.vocab_size()) throw ContractError("step model returned wrong vocabulary size");
  return penalized_log_probs(logits, ids, cfg.repetition_penalty);
}

// Indices sorted by score descending; ties go to the lower id.
std::vector<std::size_t> ranked(const std::vector<double>& scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  return order;
}

std::size_t draw(const std::vector<double>& weights, Rng& rng) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  double u = rng.uniform() * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (u < weights[i]) return i;
    u -= weights[i];
  }
  return weights.size() - 1;
}

std::vector<int> sample(const StepModel& model, const DecodeConfig& cfg) {
  Rng rng(cfg.seed);
  std::vector<int> ids;
  while (ids.size() < cfg.max_len) {
    const auto scores = step_scores(model, cfg, ids);
    const auto order = ranked(scores);
    std::size_t keep = order.size();
    if (cfg.strategy == Strategy::kTopK) keep = std::min(keep, static_cast<std::size_t>(cfg.top_k));
    std::vector<double> probs;
    for (std::size_t r = 0; r < keep; ++r) probs.push_back(std::exp(scores[order[r]] - scores[order[0]]));
    if (cfg.strategy == Strategy::kNucleus) {
      const double total = std::accumulate(probs.begin(), probs.end(), 0.0);
      double mass = 0.0;
      std::size_t n = 0;
      while (n < probs.size()) {
        mass += probs[n++] / total;
        if (mass >= cfg.top_p) break;
      }
      probs.resize(n);
    }
    const int next = static_cast<int>(order[draw(probs, rng)]);
    ids.push_back(next);
    if (next == cfg.eos) break;
  }
  return ids;
}

std::vector<int> greedy(const StepModel& model, const DecodeConfig& cfg) {
  std::vector<int> ids;
  while (ids.size() < cfg.max_len) {
    const auto scores = step_scores(model, cfg, ids);
    std::size_t best = 0;
    for (std::size_t t = 1; t < scores.size(); ++t) {
      if (scores[t] > scores[best]) best = t;
    }
    ids.push_back(static_cast<int>(best));
    if (ids.back() == cfg.eos) break;
  }
  return ids;
}

std::vector<int> beam_search(const StepModel& model, const DecodeConfig& cfg) {
  const auto width = static_cast<std::size_t>(cfg.beams);
  std::vector<Hypothesis> alive{{}};
  std::vector<Hypothesis> finished;
  while (!alive.empty()) {
    if (alive.front().ids.size() >= cfg.max_len) {
      finished.insert(finished.end(), alive.begin(), alive.end());
      break;
    }
    std::vector<Hypothesis> candidates;
    for (const auto& h : alive) {
      const auto scores = step_scores(model, cfg, h.ids);
      for (std::size_t t = 0; t < scores.size(); ++t) {
        if (scores[t] == -std::numeric_limits<double>::infinity()) continue;
        Hypothesis c{h.ids, h.log_prob + scores[t]};
        c.ids.push_back(static_cast<int>(t));
        candidates.push_back(std::move(c));
      }
    }
    // Best cumulative score first; ties go to the earlier parent, then the
    // lower token id, which the construction order already encodes.
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Hypothesis& a, const Hypothesis& b) { return a.log_prob > b.log_prob; });
    std::vector<Hypothesis> next;
    for (std::size_t i = 0; i < std::min(width, candidates.size()); ++i) {
      if (candidates[i].ids.back() == cfg.eos) {
        finished.push_back(std::move(candidates[i]));
      } else {
        next.push_back(std::move(candidates[i]));
      }
    }
    alive = std::move(next);
  }
  if (finished.empty()) return {};
  const Hypothesis* best = &finished.front();
  double best_score = length_normalized(best->log_prob, best->ids.size(), cfg.length_penalty);
  for (const auto& h : finished) {
    const double s = length_normalized(h.log_prob, h.ids.size(), cfg.length_penalty);
    if (s > best_score) {
      best = &h;
      best_score = s;
    }
  }
  return best->ids;
}

}  // namespace

TransformerStepModel::TransformerStepModel(const Params& params, const ModelConfig& config, Matrix src_states)
    : params_(&params), config_(&config), src_states_(std::move(src_states)) {}

std::size_t TransformerStepModel::vocab_size() const { return static_cast<std::size_t>(config_->vocab_size); }

std::vector<double> TransformerStepModel::next_logits(std::span<const int> prefix) const {
  const Matrix logits = decode_logits(prefix, src_states_, *params_, *config_);
  const Eigen::RowVectorXd last = logits.bottomRows(1);
  return {last.data(), last.data() + last.size()};
}

void DecodeConfig::validate() const {
  if (beams < 1) throw ValidationError("beams must be at least 1");
  if (!(top_p > 0.0 && top_p <= 1.0)) throw ValidationError("top_p must lie in (0, 1]");
  if (top_k < 1) throw ValidationError("top_k must be at least 1");
  if (!(repetition_penalty > 0.0)) throw ValidationError("repetition_penalty must be positive");
  if (!(length_penalty >= 0.0)) throw ValidationError("length_penalty must be >= 0");
  if (max_len < 1) throw ValidationError("max_len must be at least 1");
}

std::vector<double> penalized_log_probs(std::span<const double> logits, std::span<const int> generated,
                                        double penalty) {
  const double m = *std::max_element(logits.begin(), logits.end());
  double sum = 0.0;
  for (double l : logits) sum += std::exp(l - m);
  const double lse = m + std::log(sum);
  std::vector<double> out(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) out[i] = logits[i] - lse;
  if (penalty == 1.0) return out;
  std::vector<bool> seen(logits.size(), false);
  for (int id : generated) {
    if (id >= 0 && static_cast<std::size_t>(id) < seen.size()) seen[static_cast<std::size_t>(id)] = true;
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!seen[i]) continue;
    // A score of exactly zero cannot be scaled, so it is shifted instead.
    out[i] = out[i] < 0.0 ? out[i] * penalty : out[i] - std::log(penalty);
  }
  return out;
}

double length_normalized(double sum_log_prob, std::size_t length, double alpha) {
  if (length == 0) return sum_log_prob;
  return sum_log_prob / std::pow(static_cast<double>(length), alpha);
}

std::vector<int> generate_ids(const StepModel& model, const DecodeConfig& config) {
  config.validate();
  switch (config.strategy) {
    case Strategy::kGreedy:
      return greedy(model, config);
    case Strategy::kBeam:
      return beam_search(model, config);
    case Strategy::kTopK:
    case Strategy::kNucleus:
      return sample(model, config);
  }
  return {};
}

std::string generate(const std::string& src_text, const Params& params, const ModelConfig& mcfg,
                     const tokenize::TokenIndex& index, const DecodeConfig& dcfg) {
  const Example ex = make_example(index.encode(src_text), {}, mcfg);
  TransformerStepModel model(params, mcfg, encode_src(ex.src, params, mcfg));
  DecodeConfig cfg = dcfg;
  cfg.max_len = std::min(cfg.max_len, static_cast<std::size_t>(mcfg.max_tgt_len - 1));
  return index.decode(generate_ids(model, cfg));
}

}  // namespace vulnforge::seq2seq
