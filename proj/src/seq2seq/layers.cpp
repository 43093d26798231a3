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

#include "vulnforge/seq2seq/layers.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace vulnforge::seq2seq {

Matrix affine(const Matrix& x, const Matrix& w, const Matrix& b) {
  Matrix y = x * w;
  y.rowwise() += b.row(0);
  return y;
}

Matrix affine_backward(const Matrix& x, const Matrix& w, const Matrix& dy, Matrix& dw, Matrix& db) {
  dw.noalias() += x.transpose() * dy;
  db += dy.colwise().sum();
  return dy * w.transpose();
}

Matrix softmax_rows(const Matrix& scores) {
  Matrix y(scores.rows(), scores.cols());
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    const double m = scores.row(i).maxCoeff();
    double sum = 0.0;
    for (Eigen::Index j = 0; j < scores.cols(); ++j) {
      const double s = scores(i, j);
      const double e = s == -std::numeric_limits<double>::infinity() ? 0.0 : std::exp(s - m);
      y(i, j) = e;
      sum += e;
    }
    y.row(i) /= sum;
  }
  return y;
}

Matrix softmax_rows_backward(const Matrix& y, const Matrix& dy) {
  const Eigen::VectorXd dot = (y.array() * dy.array()).rowwise().sum();
  return (y.array() * (dy.colwise() - dot).array()).matrix();
}

Matrix log_softmax_rows(const Matrix& scores) {
  Matrix out(scores.rows(), scores.cols());
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    const double m = scores.row(i).maxCoeff();
    const double lse = m + std::log((scores.row(i).array() - m).exp().sum());
    out.row(i) = scores.row(i).array() - lse;
  }
  return out;
}

Matrix layer_norm(const Matrix& x, const NormParams& p, NormCache* cache) {
  const auto n = x.rows();
  const auto d = static_cast<double>(x.cols());
  Matrix xhat(n, x.cols());
  Eigen::VectorXd inv_std(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mean = x.row(i).sum() / d;
    const auto centered = (x.row(i).array() - mean).matrix();
    const double var = centered.squaredNorm() / d;
    inv_std(i) = 1.0 / std::sqrt(var + kNormEps);
    xhat.row(i) = centered * inv_std(i);
  }
  Matrix y = (xhat.array().rowwise() * p.gamma.row(0).array()).matrix();
  y.rowwise() += p.beta.row(0);
  if (cache) *cache = {xhat, inv_std};
  return y;
}

Matrix layer_norm_backward(const NormCache& cache, const NormParams& p, const Matrix& dy,
                           NormParams& grad) {
  grad.gamma += (dy.array() * cache.xhat.array()).colwise().sum().matrix();
  grad.beta += dy.colwise().sum();
  const Matrix dxhat = (dy.array().rowwise() * p.gamma.row(0).array()).matrix();
  const auto d = static_cast<double>(dy.cols());
  Matrix dx(dy.rows(), dy.cols());
  for (Eigen::Index i = 0; i < dy.rows(); ++i) {
    const double sum = dxhat.row(i).sum();
    const double dot = dxhat.row(i).dot(cache.xhat.row(i));
    dx.row(i) = (cache.inv_std(i) / d) *
                (d * dxhat.row(i).array() - sum - cache.xhat.row(i).array() * dot).matrix();
  }
  return dx;
}

double gelu(double x) { return 0.5 * x * (1.0 + std::erf(x / std::numbers::sqrt2)); }

double gelu_grad(double x) {
  const double cdf = 0.5 * (1.0 + std::erf(x / std::numbers::sqrt2));
  const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
  return cdf + x * pdf;
}

Matrix feed_forward(const Matrix& x, const FfnParams& p, FfnActivation activation, FfnCache* cache) {
  Matrix pre = affine(x, p.w1, p.b1);
  Matrix act = activation == FfnActivation::kGelu ? Matrix(pre.unaryExpr(&gelu)) : pre;
  Matrix y = affine(act, p.w2, p.b2);
  if (cache) *cache = {x, std::move(pre), std::move(act)};
  return y;
}

Matrix feed_forward_backward(const FfnCache& cache, const FfnParams& p, FfnActivation activation,
                             const Matrix& dy, FfnParams& grad) {
  Matrix dact = affine_backward(cache.act, p.w2, dy, grad.w2, grad.b2);
  if (activation == FfnActivation::kGelu) {
    dact = (dact.array() * cache.pre.unaryExpr(&gelu_grad).array()).matrix();
  }
  return affine_backward(cache.x, p.w1, dact, grad.w1, grad.b1);
}

}  // namespace vulnforge::seq2seq
