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

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "vulnforge/seq2seq/model.hpp"
#include "vulnforge/seq2seq/params.hpp"

namespace vulnforge::testing {

struct GroupError {
  double analytic_norm = 0.0;
  double numeric_norm = 0.0;
  double diff_norm = 0.0;
  // ||a - n|| / max(||a||, ||n||). Groups whose true gradient is zero (both
  // norms under `floor`) are judged on the absolute difference instead.
  double relative(double floor = 1e-7) const {
    const double scale = std::max(analytic_norm, numeric_norm);
    if (scale < floor) return diff_norm < floor ? 0.0 : diff_norm / floor;
    return diff_norm / scale;
  }
};

// Central finite differences of the summed token NLL for every entry of every
// parameter group, against the model's analytic gradient.
inline std::map<std::string, GroupError> gradient_check(const seq2seq::Example& ex, const seq2seq::Params& params,
                                                        const seq2seq::ModelConfig& config, double h = 1e-5) {
  auto grad = seq2seq::zeros_like(params);
  seq2seq::example_loss(ex, params, config, &grad);

  std::map<std::string, seq2seq::Matrix> analytic;
  seq2seq::visit_params(grad, [&](const std::string& name, const seq2seq::Matrix& m) { analytic[name] = m; });

  auto probe = params;
  std::map<std::string, GroupError> out;
  seq2seq::visit_params(probe, [&](const std::string& name, seq2seq::Matrix& m) {
    const auto& a = analytic.at(name);
    double an = 0.0, nn = 0.0, dn = 0.0;
    for (Eigen::Index i = 0; i < m.size(); ++i) {
      const double orig = m.data()[i];
      m.data()[i] = orig + h;
      const double up = seq2seq::example_loss(ex, probe, config).nll;
      m.data()[i] = orig - h;
      const double down = seq2seq::example_loss(ex, probe, config).nll;
      m.data()[i] = orig;
      const double numeric = (up - down) / (2.0 * h);
      const double analytic_v = a.data()[i];
      an += analytic_v * analytic_v;
      nn += numeric * numeric;
      dn += (analytic_v - numeric) * (analytic_v - numeric);
    }
    out[name] = {std::sqrt(an), std::sqrt(nn), std::sqrt(dn)};
  });
  return out;
}

}  // namespace vulnforge::testing
