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

#include "vulnforge/seq2seq/model.hpp"

#include <cmath>
#include <string>

#include "vulnforge/core/error.hpp"
#include "vulnforge/seq2seq/attention.hpp"
#include "vulnforge/seq2seq/layers.hpp"
#include "vulnforge/tokenize/token_index.hpp"

namespace vulnforge::seq2seq {
namespace {

struct EncoderLayerCache {
  AttentionCache self;
  NormCache norm1;
  FfnCache ffn;
  NormCache norm2;
};

struct DecoderLayerCache {
  AttentionCache self;
  NormCache norm1;
  AttentionCache cross;
  NormCache norm2;
  FfnCache ffn;
  NormCache norm3;
};

void check_ids(std::span<const int> ids, int max_len, int offset, const ModelConfig& config,
               const char* what) {
  if (ids.empty()) throw ValidationError(std::string(what) + " sequence is empty");
  if (static_cast<int>(ids.size()) > max_len) {
    throw ValidationError(std::string(what) + " sequence longer than " + std::to_string(max_len));
  }
  if (offset < 0) throw ValidationError("position offset must be >= 0");
  if (config.pos_kind == PosKind::kLearnedAbsolute && offset + static_cast<int>(ids.size()) > max_len) {
    throw ValidationError(std::string(what) + " positions exceed the positional table");
  }
  for (int id : ids) {
    if (id < 0 || id >= config.vocab_size) {
      throw ValidationError("token id " + std::to_string(id) + " outside vocabulary of size " +
                            std::to_string(config.vocab_size));
    }
  }
}

Matrix embed(std::span<const int> ids, const Matrix& table, const Matrix& pos, int offset) {
  Matrix x(static_cast<Eigen::Index>(ids.size()), table.cols());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    x.row(static_cast<Eigen::Index>(i)) = table.row(ids[i]);
    if (pos.size() > 0) x.row(static_cast<Eigen::Index>(i)) += pos.row(offset + static_cast<Eigen::Index>(i));
  }
  return x;
}

void embed_backward(std::span<const int> ids, const Matrix& dx, Matrix& dtable, Matrix& dpos,
                    int offset) {
  for (std::size_t i = 0; i < ids.size(); ++i) {
    dtable.row(ids[i]) += dx.row(static_cast<Eigen::Index>(i));
    if (dpos.size() > 0) dpos.row(offset + static_cast<Eigen::Index>(i)) += dx.row(static_cast<Eigen::Index>(i));
  }
}

Matrix run_encoder(std::span<const int> src, const Params& p, const ModelConfig& c, int offset,
                   std::vector<EncoderLayerCache>* caches) {
  Matrix x = embed(src, p.embedding, p.enc_pos, offset);
  if (caches) caches->resize(p.encoder.size());
  for (std::size_t l = 0; l < p.encoder.size(); ++l) {
    const auto& layer = p.encoder[l];
    EncoderLayerCache* lc = caches ? &(*caches)[l] : nullptr;
    Matrix a = multi_head_attention(layer.self, x, x, c.heads, false, lc ? &lc->self : nullptr);
    Matrix h = layer_norm(x + a, layer.norm1, lc ? &lc->norm1 : nullptr);
    Matrix f = feed_forward(h, layer.ffn, c.activation, lc ? &lc->ffn : nullptr);
    x = layer_norm(h + f, layer.norm2, lc ? &lc->norm2 : nullptr);
  }
  return x;
}

Matrix run_decoder(std::span<const int> tgt, const Matrix& mem, const Params& p, const ModelConfig& c,
                   int offset, std::vector<DecoderLayerCache>* caches) {
  Matrix y = embed(tgt, p.embedding, p.dec_pos, offset);
  if (caches) caches->resize(p.decoder.size());
  for (std::size_t l = 0; l < p.decoder.size(); ++l) {
    const auto& layer = p.decoder[l];
    DecoderLayerCache* lc = caches ? &(*caches)[l] : nullptr;
    Matrix a = multi_head_attention(layer.self, y, y, c.heads, true, lc ? &lc->self : nullptr);
    Matrix h1 = layer_norm(y + a, layer.norm1, lc ? &lc->norm1 : nullptr);
    Matrix x = multi_head_attention(layer.cross, h1, mem, c.heads, false, lc ? &lc->cross : nullptr);
    Matrix h2 = layer_norm(h1 + x, layer.norm2, lc ? &lc->norm2 : nullptr);
    Matrix f = feed_forward(h2, layer.ffn, c.activation, lc ? &lc->ffn : nullptr);
    y = layer_norm(h2 + f, layer.norm3, lc ? &lc->norm3 : nullptr);
  }
  return y;
}

}  // namespace

Example make_example(std::vector<int> src, std::vector<int> tgt, const ModelConfig& config) {
  if (static_cast<int>(src.size()) > config.max_src_len - 1) src.resize(static_cast<std::size_t>(config.max_src_len - 1));
  src.push_back(tokenize::kEosId);
  if (static_cast<int>(tgt.size()) > config.max_tgt_len - 1) tgt.resize(static_cast<std::size_t>(config.max_tgt_len - 1));
  return {std::move(src), std::move(tgt)};
}

Matrix encode_src(std::span<const int> src, const Params& params, const ModelConfig& config, int offset) {
  check_ids(src, config.max_src_len, offset, config, "source");
  return run_encoder(src, params, config, offset, nullptr);
}

Matrix decode_logits(std::span<const int> tgt_in, const Matrix& src_states, const Params& params,
                     const ModelConfig& config, int offset) {
  check_ids(tgt_in, config.max_tgt_len, offset, config, "target");
  if (src_states.cols() != config.d_model || src_states.rows() == 0) {
    throw ShapeError("source states must be n x d_model");
  }
  const Matrix y = run_decoder(tgt_in, src_states, params, config, offset, nullptr);
  return affine(y, params.head_w, params.head_b);
}

std::vector<double> decode_step(std::span<const int> prefix, const Matrix& src_states,
                                const Params& params, const ModelConfig& config) {
  if (prefix.empty() || prefix.front() != tokenize::kBosId) {
    throw ValidationError("decoder prefix must begin with the start token");
  }
  const Matrix logits = decode_logits(prefix, src_states, params, config);
  const Matrix probs = softmax_rows(logits.bottomRows(1));
  return {probs.data(), probs.data() + probs.size()};
}

LossStats example_loss(const Example& ex, const Params& params, const ModelConfig& config,
                       Params* grad, double grad_scale) {
  std::vector<int> tgt_in{tokenize::kBosId};
  tgt_in.insert(tgt_in.end(), ex.tgt.begin(), ex.tgt.end());
  std::vector<int> tgt_out(ex.tgt.begin(), ex.tgt.end());
  tgt_out.push_back(tokenize::kEosId);
  check_ids(ex.src, config.max_src_len, 0, config, "source");
  check_ids(tgt_in, config.max_tgt_len, 0, config, "target");

  std::vector<EncoderLayerCache> enc_caches;
  std::vector<DecoderLayerCache> dec_caches;
  const bool want_grad = grad != nullptr;
  const Matrix mem = run_encoder(ex.src, params, config, 0, want_grad ? &enc_caches : nullptr);
  const Matrix y = run_decoder(tgt_in, mem, params, config, 0, want_grad ? &dec_caches : nullptr);
  const Matrix logits = affine(y, params.head_w, params.head_b);
  const Matrix logp = log_softmax_rows(logits);

  LossStats stats;
  stats.tokens = tgt_out.size();
  for (std::size_t t = 0; t < tgt_out.size(); ++t) {
    const auto row = static_cast<Eigen::Index>(t);
    stats.nll -= logp(row, tgt_out[t]);
    Eigen::Index best = 0;
    logp.row(row).maxCoeff(&best);
    if (best == tgt_out[t]) ++stats.correct;
  }
  if (!want_grad) return stats;

  Matrix dlogits = logp.array().exp().matrix();
  for (std::size_t t = 0; t < tgt_out.size(); ++t) dlogits(static_cast<Eigen::Index>(t), tgt_out[t]) -= 1.0;
  dlogits *= grad_scale;

  Params& g = *grad;
  Matrix dy = affine_backward(y, params.head_w, dlogits, g.head_w, g.head_b);
  Matrix dmem = Matrix::Zero(mem.rows(), mem.cols());
  for (std::size_t l = params.decoder.size(); l-- > 0;) {
    const auto& layer = params.decoder[l];
    auto& gl = g.decoder[l];
    const auto& lc = dec_caches[l];
    Matrix dr3 = layer_norm_backward(lc.norm3, layer.norm3, dy, gl.norm3);
    Matrix dh2 = dr3 + feed_forward_backward(lc.ffn, layer.ffn, config.activation, dr3, gl.ffn);
    Matrix dr2 = layer_norm_backward(lc.norm2, layer.norm2, dh2, gl.norm2);
    Matrix dh1 = dr2;
    multi_head_attention_backward(lc.cross, layer.cross, config.heads, dr2, gl.cross, dh1, dmem);
    Matrix dr1 = layer_norm_backward(lc.norm1, layer.norm1, dh1, gl.norm1);
    Matrix dx = dr1;
    Matrix dkv = Matrix::Zero(dr1.rows(), dr1.cols());
    multi_head_attention_backward(lc.self, layer.self, config.heads, dr1, gl.self, dx, dkv);
    dy = dx + dkv;
  }
  embed_backward(tgt_in, dy, g.embedding, g.dec_pos, 0);

  Matrix dx = dmem;
  for (std::size_t l = params.encoder.size(); l-- > 0;) {
    const auto& layer = params.encoder[l];
    auto& gl = g.encoder[l];
    const auto& lc = enc_caches[l];
    Matrix dr2 = layer_norm_backward(lc.norm2, layer.norm2, dx, gl.norm2);
    Matrix dh = dr2 + feed_forward_backward(lc.ffn, layer.ffn, config.activation, dr2, gl.ffn);
    Matrix dr1 = layer_norm_backward(lc.norm1, layer.norm1, dh, gl.norm1);
    Matrix dq = dr1;
    Matrix dkv = Matrix::Zero(dr1.rows(), dr1.cols());
    multi_head_attention_backward(lc.self, layer.self, config.heads, dr1, gl.self, dq, dkv);
    dx = dq + dkv;
  }
  embed_backward(ex.src, dx, g.embedding, g.enc_pos, 0);
  return stats;
}

}  // namespace vulnforge::seq2seq
