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

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "vulnforge/seq2seq/config.hpp"

namespace vulnforge::seq2seq {

using Matrix = Eigen::MatrixXd;

// Weights are stored input-major (in x out) and applied as x * W + b, with
// biases as 1 x out rows.
struct AttentionParams {
  Matrix wq, bq, wk, bk, wv, bv, wo, bo;
  Matrix rel_k, rel_v;  // (2 * window + 1) x head_dim, empty when unused
};

struct NormParams {
  Matrix gamma, beta;
};

struct FfnParams {
  Matrix w1, b1, w2, b2;
};

struct EncoderLayer {
  AttentionParams self;
  NormParams norm1;
  FfnParams ffn;
  NormParams norm2;
};

struct DecoderLayer {
  AttentionParams self;
  NormParams norm1;
  AttentionParams cross;
  NormParams norm2;
  FfnParams ffn;
  NormParams norm3;
};

struct Params {
  Matrix embedding;  // vocab x d_model, shared by encoder and decoder
  Matrix enc_pos;    // max_src_len x d_model, empty unless learned_absolute
  Matrix dec_pos;    // max_tgt_len x d_model, empty unless learned_absolute
  std::vector<EncoderLayer> encoder;
  std::vector<DecoderLayer> decoder;
  Matrix head_w, head_b;  // d_model x vocab, 1 x vocab
};

// Scaled uniform initialisation: weights in +-1/sqrt(fan_in), biases and
// norm shifts zero, norm gains one. Lookup tables use fan_in = 1.
Params init_params(const ModelConfig& config);
// Same shapes, every entry zero.
Params zeros_like(const Params& params);

namespace detail {

template <typename A, typename F>
void visit_attention(A& a, const std::string& p, F& f) {
  f(p + ".wq", a.wq);
  f(p + ".bq", a.bq);
  f(p + ".wk", a.wk);
  f(p + ".bk", a.bk);
  f(p + ".wv", a.wv);
  f(p + ".bv", a.bv);
  f(p + ".wo", a.wo);
  f(p + ".bo", a.bo);
  if (a.rel_k.size() > 0) {
    f(p + ".rel_k", a.rel_k);
    f(p + ".rel_v", a.rel_v);
  }
}

template <typename N, typename F>
void visit_norm(N& n, const std::string& p, F& f) {
  f(p + ".gamma", n.gamma);
  f(p + ".beta", n.beta);
}

template <typename X, typename F>
void visit_ffn(X& x, const std::string& p, F& f) {
  f(p + ".w1", x.w1);
  f(p + ".b1", x.b1);
  f(p + ".w2", x.w2);
  f(p + ".b2", x.b2);
}

}  // namespace detail

// Calls f(name, matrix) for every tensor in a fixed order. Works on const
// and mutable Params.
template <typename P, typename F>
void visit_params(P& params, F&& f) {
  f(std::string("embedding"), params.embedding);
  if (params.enc_pos.size() > 0) {
    f(std::string("enc_pos"), params.enc_pos);
    f(std::string("dec_pos"), params.dec_pos);
  }
  for (std::size_t l = 0; l < params.encoder.size(); ++l) {
    auto& layer = params.encoder[l];
    const std::string p = "encoder." + std::to_string(l);
    detail::visit_attention(layer.self, p + ".self", f);
    detail::visit_norm(layer.norm1, p + ".norm1", f);
    detail::visit_ffn(layer.ffn, p + ".ffn", f);
    detail::visit_norm(layer.norm2, p + ".norm2", f);
  }
  for (std::size_t l = 0; l < params.decoder.size(); ++l) {
    auto& layer = params.decoder[l];
    const std::string p = "decoder." + std::to_string(l);
    detail::visit_attention(layer.self, p + ".self", f);
    detail::visit_norm(layer.norm1, p + ".norm1", f);
    detail::visit_attention(layer.cross, p + ".cross", f);
    detail::visit_norm(layer.norm2, p + ".norm2", f);
    detail::visit_ffn(layer.ffn, p + ".ffn", f);
    detail::visit_norm(layer.norm3, p + ".norm3", f);
  }
  f(std::string("head_w"), params.head_w);
  f(std::string("head_b"), params.head_b);
}

bool all_finite(const Params& params);
std::size_t parameter_count(const Params& params);

}  // namespace vulnforge::seq2seq
