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

#include "vulnforge/seq2seq/params.hpp"

#include <cmath>

#include "vulnforge/core/error.hpp"
#include "vulnforge/core/rng.hpp"

namespace vulnforge::seq2seq {

std::string to_string(PosKind kind) {
  switch (kind) {
    case PosKind::kNone:
      return "none";
    case PosKind::kLearnedAbsolute:
      return "learned_absolute";
    case PosKind::kRelative:
      return "relative";
  }
  return "none";
}

PosKind pos_kind_from_string(const std::string& s) {
  if (s == "none") return PosKind::kNone;
  if (s == "learned_absolute") return PosKind::kLearnedAbsolute;
  if (s == "relative") return PosKind::kRelative;
  throw ValidationError("unknown positional kind: " + s);
}

void ModelConfig::validate() const {
  if (vocab_size < 1) throw ValidationError("vocab_size must be positive");
  if (d_model < 1 || heads < 1 || layers < 1 || ffn_dim < 1) {
    throw ValidationError("model dimensions must be positive");
  }
  if (d_model % heads != 0) throw ValidationError("d_model must be divisible by heads");
  if (max_src_len < 1 || max_tgt_len < 1) throw ValidationError("max lengths must be at least 1");
}

void TrainConfig::validate() const {
  if (!(lr >= 0.0) || !std::isfinite(lr)) throw ValidationError("lr must be finite and >= 0");
  if (batch_size < 1 || epochs < 1 || beams < 1) {
    throw ValidationError("batch_size, epochs and beams must be positive");
  }
  if (!(length_penalty > 0.0) || !(repetition_penalty > 0.0)) {
    throw ValidationError("penalties must be positive");
  }
  if (!(test_frac > 0.0 && test_frac < 1.0) || !(val_frac > 0.0 && val_frac < 1.0)) {
    throw ValidationError("split fractions must lie in (0, 1)");
  }
  if (max_steps && *max_steps == 0) throw ValidationError("max_steps must be positive");
}

void to_json(nlohmann::json& j, const ModelConfig& c) {
  j = {{"vocab_size", c.vocab_size},
       {"d_model", c.d_model},
       {"heads", c.heads},
       {"layers", c.layers},
       {"ffn_dim", c.ffn_dim},
       {"max_src_len", c.max_src_len},
       {"max_tgt_len", c.max_tgt_len},
       {"pos_kind", to_string(c.pos_kind)},
       {"activation", c.activation == FfnActivation::kGelu ? "gelu" : "identity"},
       {"seed", c.seed}};
}

void from_json(const nlohmann::json& j, ModelConfig& c) {
  j.at("vocab_size").get_to(c.vocab_size);
  j.at("d_model").get_to(c.d_model);
  j.at("heads").get_to(c.heads);
  j.at("layers").get_to(c.layers);
  j.at("ffn_dim").get_to(c.ffn_dim);
  j.at("max_src_len").get_to(c.max_src_len);
  j.at("max_tgt_len").get_to(c.max_tgt_len);
  c.pos_kind = pos_kind_from_string(j.at("pos_kind").get<std::string>());
  const auto act = j.value("activation", std::string("gelu"));
  if (act != "gelu" && act != "identity") throw ValidationError("unknown activation: " + act);
  c.activation = act == "gelu" ? FfnActivation::kGelu : FfnActivation::kIdentity;
  c.seed = j.value("seed", std::uint64_t{42});
}

namespace {

Matrix uniform(Rng& rng, int rows, int cols, double bound) {
  Matrix m(rows, cols);
  // Column-major fill order is part of the seeded layout.
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.uniform(-bound, bound);
  return m;
}

Matrix linear(Rng& rng, int in, int out) { return uniform(rng, in, out, 1.0 / std::sqrt(in)); }

AttentionParams attention(Rng& rng, const ModelConfig& c, bool relative) {
  const int d = c.d_model;
  AttentionParams a;
  a.wq = linear(rng, d, d);
  a.bq = Matrix::Zero(1, d);
  a.wk = linear(rng, d, d);
  a.bk = Matrix::Zero(1, d);
  a.wv = linear(rng, d, d);
  a.bv = Matrix::Zero(1, d);
  a.wo = linear(rng, d, d);
  a.bo = Matrix::Zero(1, d);
  if (relative) {
    const int rows = 2 * kRelativeWindow + 1;
    a.rel_k = uniform(rng, rows, c.head_dim(), 1.0 / std::sqrt(c.head_dim()));
    a.rel_v = uniform(rng, rows, c.head_dim(), 1.0 / std::sqrt(c.head_dim()));
  }
  return a;
}

NormParams norm(int d) { return {Matrix::Ones(1, d), Matrix::Zero(1, d)}; }

FfnParams ffn(Rng& rng, const ModelConfig& c) {
  return {linear(rng, c.d_model, c.ffn_dim), Matrix::Zero(1, c.ffn_dim),
          linear(rng, c.ffn_dim, c.d_model), Matrix::Zero(1, c.d_model)};
}

}  // namespace

Params init_params(const ModelConfig& config) {
  config.validate();
  Rng rng(config.seed);
  const int d = config.d_model;
  const bool relative = config.pos_kind == PosKind::kRelative;
  Params p;
  p.embedding = uniform(rng, config.vocab_size, d, 1.0);
  if (config.pos_kind == PosKind::kLearnedAbsolute) {
    p.enc_pos = uniform(rng, config.max_src_len, d, 1.0);
    p.dec_pos = uniform(rng, config.max_tgt_len, d, 1.0);
  }
  for (int l = 0; l < config.layers; ++l) {
    EncoderLayer e;
    e.self = attention(rng, config, relative);
    e.norm1 = norm(d);
    e.ffn = ffn(rng, config);
    e.norm2 = norm(d);
    p.encoder.push_back(std::move(e));
  }
  for (int l = 0; l < config.layers; ++l) {
    DecoderLayer dl;
    dl.self = attention(rng, config, relative);
    dl.norm1 = norm(d);
    dl.cross = attention(rng, config, false);
    dl.norm2 = norm(d);
    dl.ffn = ffn(rng, config);
    dl.norm3 = norm(d);
    p.decoder.push_back(std::move(dl));
  }
  p.head_w = linear(rng, d, config.vocab_size);
  p.head_b = Matrix::Zero(1, config.vocab_size);
  return p;
}

Params zeros_like(const Params& params) {
  Params z = params;
  visit_params(z, [](const std::string&, Matrix& m) { m.setZero(); });
  return z;
}

bool all_finite(const Params& params) {
  bool ok = true;
  visit_params(params, [&](const std::string&, const Matrix& m) { ok = ok && m.allFinite(); });
  return ok;
}

std::size_t parameter_count(const Params& params) {
  std::size_t n = 0;
  visit_params(params, [&](const std::string&, const Matrix& m) { n += static_cast<std::size_t>(m.size()); });
  return n;
}

}  // namespace vulnforge::seq2seq
