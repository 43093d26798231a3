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

#include "vulnforge/seq2seq/params.hpp"

namespace vulnforge::seq2seq {

inline constexpr double kNormEps = 1e-5;

// x * w + b with b broadcast over rows.
Matrix affine(const Matrix& x, const Matrix& w, const Matrix& b);
// Accumulates dw, db and returns dx.
Matrix affine_backward(const Matrix& x, const Matrix& w, const Matrix& dy, Matrix& dw, Matrix& db);

// Row-wise softmax. Entries equal to -infinity get weight zero.
Matrix softmax_rows(const Matrix& scores);
// Given y = softmax_rows(s) and dL/dy, returns dL/ds.
Matrix softmax_rows_backward(const Matrix& y, const Matrix& dy);
// Row-wise log-softmax.
Matrix log_softmax_rows(const Matrix& scores);

struct NormCache {
  Matrix xhat;
  Eigen::VectorXd inv_std;
};
Matrix layer_norm(const Matrix& x, const NormParams& p, NormCache* cache);
Matrix layer_norm_backward(const NormCache& cache, const NormParams& p, const Matrix& dy,
                           NormParams& grad);

struct FfnCache {
  Matrix x, pre, act;
};
Matrix feed_forward(const Matrix& x, const FfnParams& p, FfnActivation activation, FfnCache* cache);
Matrix feed_forward_backward(const FfnCache& cache, const FfnParams& p, FfnActivation activation,
                             const Matrix& dy, FfnParams& grad);

// Exact GELU, x * Phi(x), and its derivative.
double gelu(double x);
double gelu_grad(double x);

}  // namespace vulnforge::seq2seq
