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

#include "vulnforge/seq2seq/attention.hpp"

#include <cmath>
#include <limits>

#include "vulnforge/core/error.hpp"
#include "vulnforge/seq2seq/layers.hpp"

namespace vulnforge::seq2seq {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_mask(const Matrix& scores, const std::optional<Mask>& blocked) {
  if (!blocked) return;
  if (blocked->rows() != scores.rows() || blocked->cols() != scores.cols()) {
    throw ShapeError("attention mask must be n_q x n_k");
  }
  for (Eigen::Index i = 0; i < blocked->rows(); ++i) {
    if (blocked->row(i).all()) throw ValidationError("attention mask blocks a whole row");
  }
}

}  // namespace

Matrix attention_weights(const Matrix& q, const Matrix& k, const std::optional<Mask>& blocked) {
  if (q.cols() != k.cols() || q.cols() == 0) throw ShapeError("Q and K must share d_k > 0");
  Matrix scores = q * k.transpose() / std::sqrt(static_cast<double>(q.cols()));
  check_mask(scores, blocked);
  if (blocked) scores = blocked->select(Matrix::Constant(scores.rows(), scores.cols(), kNegInf), scores);
  return softmax_rows(scores);
}

Matrix attention(const Matrix& q, const Matrix& k, const Matrix& v, const std::optional<Mask>& blocked) {
  if (k.rows() != v.rows()) throw ShapeError("K and V must have the same number of rows");
  return attention_weights(q, k, blocked) * v;
}

Matrix multi_head_attention(const AttentionParams& p, const Matrix& xq, const Matrix& xkv, int heads,
                            bool causal, AttentionCache* cache) {
  const Eigen::Index nq = xq.rows();
  const Eigen::Index nk = xkv.rows();
  const Eigen::Index d = p.wq.cols();
  const Eigen::Index dk = d / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dk));
  const bool relative = p.rel_k.size() > 0;

  Matrix q = affine(xq, p.wq, p.bq);
  Matrix k = affine(xkv, p.wk, p.bk);
  Matrix v = affine(xkv, p.wv, p.bv);
  Matrix z(nq, d);
  std::vector<Matrix> weights;
  weights.reserve(static_cast<std::size_t>(heads));
  for (int h = 0; h < heads; ++h) {
    const auto qh = q.middleCols(h * dk, dk);
    const auto kh = k.middleCols(h * dk, dk);
    const auto vh = v.middleCols(h * dk, dk);
    Matrix s = qh * kh.transpose();
    if (relative) {
      for (Eigen::Index i = 0; i < nq; ++i) {
        for (Eigen::Index j = 0; j < nk; ++j) s(i, j) += qh.row(i).dot(p.rel_k.row(relative_index(i, j)));
      }
    }
    s *= scale;
    if (causal) {
      for (Eigen::Index i = 0; i < nq; ++i) {
        for (Eigen::Index j = i + 1; j < nk; ++j) s(i, j) = kNegInf;
      }
    }
    Matrix a = softmax_rows(s);
    Matrix zh = a * vh;
    if (relative) {
      for (Eigen::Index i = 0; i < nq; ++i) {
        for (Eigen::Index j = 0; j < nk; ++j) zh.row(i) += a(i, j) * p.rel_v.row(relative_index(i, j));
      }
    }
    z.middleCols(h * dk, dk) = zh;
    weights.push_back(std::move(a));
  }
  Matrix out = affine(z, p.wo, p.bo);
  if (cache) {
    *cache = {xq, xkv, std::move(q), std::move(k), std::move(v), std::move(z), std::move(weights)};
  }
  return out;
}

void multi_head_attention_backward(const AttentionCache& c, const AttentionParams& p, int heads,
                                   const Matrix& dy, AttentionParams& grad, Matrix& dxq,
                                   Matrix& dxkv) {
  const Eigen::Index nq = c.xq.rows();
  const Eigen::Index nk = c.xkv.rows();
  const Eigen::Index d = p.wq.cols();
  const Eigen::Index dk = d / heads;
  const double scale = 1.0 / std::sqrt(static_cast<double>(dk));
  const bool relative = p.rel_k.size() > 0;

  const Matrix dz = affine_backward(c.z, p.wo, dy, grad.wo, grad.bo);
  Matrix dq = Matrix::Zero(nq, d);
  Matrix dk_all = Matrix::Zero(nk, d);
  Matrix dv = Matrix::Zero(nk, d);
  for (int h = 0; h < heads; ++h) {
    const Matrix& a = c.weights[static_cast<std::size_t>(h)];
    const auto qh = c.q.middleCols(h * dk, dk);
    const auto kh = c.k.middleCols(h * dk, dk);
    const auto vh = c.v.middleCols(h * dk, dk);
    const auto dzh = dz.middleCols(h * dk, dk);

    Matrix da = dzh * vh.transpose();
    dv.middleCols(h * dk, dk) += a.transpose() * dzh;
    if (relative) {
      for (Eigen::Index i = 0; i < nq; ++i) {
        for (Eigen::Index j = 0; j < nk; ++j) {
          const int r = relative_index(i, j);
          da(i, j) += dzh.row(i).dot(p.rel_v.row(r));
          grad.rel_v.row(r) += a(i, j) * dzh.row(i);
        }
      }
    }
    const Matrix ds = softmax_rows_backward(a, da) * scale;
    dq.middleCols(h * dk, dk) += ds * kh;
    dk_all.middleCols(h * dk, dk) += ds.transpose() * qh;
    if (relative) {
      for (Eigen::Index i = 0; i < nq; ++i) {
        for (Eigen::Index j = 0; j < nk; ++j) {
          const int r = relative_index(i, j);
          dq.middleCols(h * dk, dk).row(i) += ds(i, j) * p.rel_k.row(r);
          grad.rel_k.row(r) += ds(i, j) * qh.row(i);
        }
      }
    }
  }
  dxq += affine_backward(c.xq, p.wq, dq, grad.wq, grad.bq);
  dxkv += affine_backward(c.xkv, p.wk, dk_all, grad.wk, grad.bk);
  dxkv += affine_backward(c.xkv, p.wv, dv, grad.wv, grad.bv);
}

}  // namespace vulnforge::seq2seq
