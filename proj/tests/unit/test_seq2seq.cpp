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

#include <doctest.h>

#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "support/gradcheck.hpp"
#include "support/temp_dir.hpp"
#include "support/toy_lm.hpp"
#include "vulnforge/core/error.hpp"
#include "vulnforge/core/rng.hpp"
#include "vulnforge/seq2seq/attention.hpp"
#include "vulnforge/seq2seq/checkpoint.hpp"
#include "vulnforge/seq2seq/generate.hpp"
#include "vulnforge/seq2seq/layers.hpp"
#include "vulnforge/seq2seq/model.hpp"
#include "vulnforge/seq2seq/train.hpp"
#include "vulnforge/tokenize/bpe.hpp"
#include "vulnforge/tokenize/token_index.hpp"

using namespace vulnforge;
using namespace vulnforge::seq2seq;

namespace {

ModelConfig small_config(PosKind pos = PosKind::kNone) {
  ModelConfig c;
  c.vocab_size = 12;
  c.d_model = 8;
  c.heads = 2;
  c.layers = 1;
  c.ffn_dim = 16;
  c.max_src_len = 16;
  c.max_tgt_len = 16;
  c.pos_kind = pos;
  c.seed = 5;
  return c;
}

bool near(const Matrix& a, const Matrix& b, double tol) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a - b).cwiseAbs().maxCoeff() <= tol;
}

Matrix rows_of(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (double x : r) m(i, j++) = x;
    ++i;
  }
  return m;
}

void zero_attention(AttentionParams& a) {
  for (Matrix* m : {&a.wq, &a.bq, &a.wk, &a.bk, &a.wv, &a.bv, &a.wo, &a.bo}) m->setZero();
}

}  // namespace

TEST_CASE("attention of a single key returns its value") {
  const Matrix q = rows_of({{0.3, -0.2}});
  const Matrix k = rows_of({{1.5, 2.0}});
  const Matrix v = rows_of({{7.0, -3.0, 2.0}});
  CHECK(near(attention(q, k, v), v, 0.0));
}

TEST_CASE("identical keys average the values") {
  const Matrix q = rows_of({{0.3, -0.2}, {5.0, 1.0}});
  const Matrix k = rows_of({{1.0, 2.0}, {1.0, 2.0}, {1.0, 2.0}});
  const Matrix v = rows_of({{1.0, 0.0}, {2.0, 3.0}, {6.0, 0.0}});
  const Matrix mean = rows_of({{3.0, 1.0}, {3.0, 1.0}});
  CHECK(near(attention(q, k, v), mean, 1e-12));
}

TEST_CASE("two-key hand case") {
  const Matrix q = rows_of({{1.0, 0.0}});
  const Matrix k = rows_of({{1.0, 0.0}, {0.0, 1.0}});
  const Matrix v = k;
  const double a = std::exp(1.0 / std::sqrt(2.0));
  const double w0 = a / (a + 1.0);
  CHECK(near(attention(q, k, v), rows_of({{w0, 1.0 - w0}}), 1e-12));
}

TEST_CASE("masked keys get zero weight and bad shapes are rejected") {
  const Matrix q = rows_of({{1.0, 0.0}, {0.0, 1.0}});
  const Matrix k = rows_of({{1.0, 0.0}, {0.0, 1.0}});
  Mask m(2, 2);
  m << false, true, false, false;
  const Matrix w = attention_weights(q, k, m);
  CHECK(w(0, 1) == 0.0);
  CHECK(w(0, 0) == doctest::Approx(1.0));
  Mask all(2, 2);
  all << true, true, false, false;
  CHECK_THROWS_AS(attention_weights(q, k, all), ValidationError);
  CHECK_THROWS_AS(attention(q, rows_of({{1.0, 0.0, 0.0}}), rows_of({{1.0}})), ShapeError);
  CHECK_THROWS_AS(attention(q, k, rows_of({{1.0}})), ShapeError);
}

TEST_CASE("softmax rows sum to one and ignore blocked entries") {
  Rng rng(9);
  Matrix s(6, 7);
  for (Eigen::Index i = 0; i < s.size(); ++i) s.data()[i] = rng.uniform(-30.0, 30.0);
  s(2, 3) = -std::numeric_limits<double>::infinity();
  const Matrix p = softmax_rows(s);
  for (Eigen::Index i = 0; i < p.rows(); ++i) CHECK(std::abs(p.row(i).sum() - 1.0) <= 1e-12);
  CHECK(p(2, 3) == 0.0);
}

TEST_CASE("zero projections leave the normalized residual path") {
  auto cfg = small_config();
  auto p = init_params(cfg);
  for (auto& layer : p.encoder) {
    zero_attention(layer.self);
    for (Matrix* m : {&layer.ffn.w1, &layer.ffn.b1, &layer.ffn.w2, &layer.ffn.b2}) m->setZero();
  }
  const std::vector<int> src = {4, 7, 7, 2};
  const Matrix out = encode_src(src, p, cfg);
  for (std::size_t i = 0; i < src.size(); ++i) {
    std::vector<double> x(p.embedding.cols());
    for (std::size_t j = 0; j < x.size(); ++j) x[j] = p.embedding(src[i], static_cast<Eigen::Index>(j));
    for (int pass = 0; pass < 2; ++pass) {
      double mean = 0, var = 0;
      for (double t : x) mean += t;
      mean /= static_cast<double>(x.size());
      for (double t : x) var += (t - mean) * (t - mean);
      var /= static_cast<double>(x.size());
      for (double& t : x) t = (t - mean) / std::sqrt(var + 1e-5);
    }
    for (std::size_t j = 0; j < x.size(); ++j) {
      CHECK(out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) == doctest::Approx(x[j]).epsilon(1e-10));
    }
  }
}

TEST_CASE("encoder without positions is permutation equivariant") {
  auto cfg = small_config();
  cfg.layers = 2;
  const auto p = init_params(cfg);
  const std::vector<int> src = {4, 5, 6, 7, 8};
  const std::vector<int> perm = {2, 0, 4, 1, 3};
  std::vector<int> permuted;
  for (int i : perm) permuted.push_back(src[static_cast<std::size_t>(i)]);
  const Matrix a = encode_src(src, p, cfg);
  const Matrix b = encode_src(permuted, p, cfg);
  for (std::size_t r = 0; r < perm.size(); ++r) {
    CHECK(near(b.row(static_cast<Eigen::Index>(r)), a.row(perm[r]), 1e-10));
  }
  auto abs_cfg = cfg;
  abs_cfg.pos_kind = PosKind::kLearnedAbsolute;
  const auto q = init_params(abs_cfg);
  const Matrix c = encode_src(src, q, abs_cfg);
  const Matrix d = encode_src(permuted, q, abs_cfg);
  CHECK_FALSE(near(d.row(0), c.row(perm[0]), 1e-6));
}

TEST_CASE("relative positions are shift invariant and absolute ones are not") {
  auto cfg = small_config(PosKind::kRelative);
  cfg.max_src_len = 32;
  const auto p = init_params(cfg);
  const std::vector<int> src = {4, 9, 5, 5, 11};
  CHECK(near(encode_src(src, p, cfg, 0), encode_src(src, p, cfg, 7), 1e-12));
  auto abs_cfg = cfg;
  abs_cfg.pos_kind = PosKind::kLearnedAbsolute;
  const auto q = init_params(abs_cfg);
  CHECK_FALSE(near(encode_src(src, q, abs_cfg, 0), encode_src(src, q, abs_cfg, 7), 1e-6));
}

TEST_CASE("decoder is causal and step distributions are normalized") {
  auto cfg = small_config(PosKind::kLearnedAbsolute);
  cfg.layers = 2;
  const auto p = init_params(cfg);
  const Matrix mem = encode_src(std::vector<int>{5, 6, 7, 2}, p, cfg);
  std::vector<int> tgt = {1, 4, 5, 6, 7, 8};
  const Matrix base = decode_logits(tgt, mem, p, cfg);
  for (std::size_t t = 0; t + 1 < tgt.size(); ++t) {
    auto changed = tgt;
    for (std::size_t u = t + 1; u < changed.size(); ++u) changed[u] = 11 - static_cast<int>(u % 3);
    const Matrix alt = decode_logits(changed, mem, p, cfg);
    CHECK(near(alt.topRows(static_cast<Eigen::Index>(t + 1)), base.topRows(static_cast<Eigen::Index>(t + 1)), 1e-12));
  }
  const auto dist = decode_step(std::vector<int>{1, 4, 5}, mem, p, cfg);
  double sum = 0.0;
  for (double x : dist) sum += x;
  CHECK(std::abs(sum - 1.0) <= 1e-9);
  CHECK_THROWS_AS(decode_step(std::vector<int>{}, mem, p, cfg), ValidationError);
  CHECK_THROWS_AS(decode_step(std::vector<int>{4, 5}, mem, p, cfg), ValidationError);
  CHECK_THROWS_AS(encode_src(std::vector<int>{4, 12}, p, cfg), ValidationError);
}

TEST_CASE("single-layer two-dimensional decoder matches a scalar computation") {
  ModelConfig cfg;
  cfg.vocab_size = 5;
  cfg.d_model = 2;
  cfg.heads = 1;
  cfg.layers = 1;
  cfg.ffn_dim = 2;
  cfg.max_src_len = 4;
  cfg.max_tgt_len = 4;
  cfg.pos_kind = PosKind::kNone;
  cfg.activation = FfnActivation::kIdentity;
  auto p = init_params(cfg);
  p.embedding = rows_of({{0.0, 0.0}, {1.0, -0.5}, {0.2, 0.3}, {-0.7, 0.9}, {0.4, 0.1}});
  auto& L = p.decoder[0];
  L.self.wq = rows_of({{0.5, -0.3}, {0.2, 0.8}});
  L.self.bq = rows_of({{0.1, 0.0}});
  L.self.wk = rows_of({{-0.4, 0.6}, {0.9, 0.1}});
  L.self.bk = rows_of({{0.0, 0.2}});
  L.self.wv = rows_of({{1.0, 0.5}, {-0.5, 1.0}});
  L.self.bv = rows_of({{0.05, -0.05}});
  L.self.wo = rows_of({{0.7, 0.0}, {0.3, -0.6}});
  L.self.bo = rows_of({{0.0, 0.1}});
  L.cross.wq = rows_of({{0.3, 0.3}, {-0.2, 0.4}});
  L.cross.bq = rows_of({{0.0, 0.0}});
  L.cross.wk = rows_of({{0.6, -0.1}, {0.2, 0.5}});
  L.cross.bk = rows_of({{0.1, 0.1}});
  L.cross.wv = rows_of({{-0.3, 0.8}, {0.5, 0.2}});
  L.cross.bv = rows_of({{0.0, 0.3}});
  L.cross.wo = rows_of({{0.9, 0.1}, {-0.2, 0.4}});
  L.cross.bo = rows_of({{-0.1, 0.0}});
  L.norm1.gamma = rows_of({{1.2, 0.8}});
  L.norm1.beta = rows_of({{0.1, -0.1}});
  L.norm2.gamma = rows_of({{0.9, 1.1}});
  L.norm2.beta = rows_of({{0.0, 0.2}});
  L.norm3.gamma = rows_of({{1.0, 1.0}});
  L.norm3.beta = rows_of({{0.0, 0.0}});
  L.ffn.w1 = rows_of({{0.5, -0.5}, {0.25, 0.75}});
  L.ffn.b1 = rows_of({{0.1, 0.0}});
  L.ffn.w2 = rows_of({{1.0, 0.2}, {-0.4, 0.6}});
  L.ffn.b2 = rows_of({{0.0, -0.2}});
  p.head_w = rows_of({{1.0, -1.0, 0.5, 0.2, -0.3}, {0.0, 0.4, -0.6, 0.9, 0.1}});
  p.head_b = rows_of({{0.0, 0.1, 0.0, -0.1, 0.2}});
  const Matrix mem = rows_of({{0.5, -1.0}, {-0.2, 0.7}, {1.1, 0.3}});
  const std::vector<int> prefix = {1, 3, 4};

  using V2 = std::array<double, 2>;
  auto lin = [](const V2& x, const Matrix& w, const Matrix& b) {
    return V2{x[0] * w(0, 0) + x[1] * w(1, 0) + b(0, 0), x[0] * w(0, 1) + x[1] * w(1, 1) + b(0, 1)};
  };
  auto norm = [](const V2& x, const NormParams& n) {
    const double m = (x[0] + x[1]) / 2.0;
    const double var = ((x[0] - m) * (x[0] - m) + (x[1] - m) * (x[1] - m)) / 2.0;
    const double s = std::sqrt(var + 1e-5);
    return V2{(x[0] - m) / s * n.gamma(0, 0) + n.beta(0, 0), (x[1] - m) / s * n.gamma(0, 1) + n.beta(0, 1)};
  };
  auto attend = [&](const V2& xq, const std::vector<V2>& kv, const AttentionParams& a) {
    const V2 q = lin(xq, a.wq, a.bq);
    std::vector<double> w;
    double total = 0.0;
    for (const auto& x : kv) {
      const V2 k = lin(x, a.wk, a.bk);
      w.push_back(std::exp((q[0] * k[0] + q[1] * k[1]) / std::sqrt(2.0)));
      total += w.back();
    }
    V2 z{0.0, 0.0};
    for (std::size_t j = 0; j < kv.size(); ++j) {
      const V2 v = lin(kv[j], a.wv, a.bv);
      z[0] += w[j] / total * v[0];
      z[1] += w[j] / total * v[1];
    }
    return lin(z, a.wo, a.bo);
  };
  std::vector<V2> ys;
  for (int id : prefix) ys.push_back({p.embedding(id, 0), p.embedding(id, 1)});
  std::vector<V2> h1;
  for (std::size_t i = 0; i < ys.size(); ++i) {
    const std::vector<V2> visible(ys.begin(), ys.begin() + static_cast<long>(i) + 1);
    const V2 a = attend(ys[i], visible, L.self);
    h1.push_back(norm({ys[i][0] + a[0], ys[i][1] + a[1]}, L.norm1));
  }
  const std::vector<V2> m = {{0.5, -1.0}, {-0.2, 0.7}, {1.1, 0.3}};
  const V2& last = h1.back();
  const V2 c = attend(last, m, L.cross);
  const V2 h2 = norm({last[0] + c[0], last[1] + c[1]}, L.norm2);
  const V2 f = lin(lin(h2, L.ffn.w1, L.ffn.b1), L.ffn.w2, L.ffn.b2);
  const V2 h3 = norm({h2[0] + f[0], h2[1] + f[1]}, L.norm3);
  std::vector<double> logits(5);
  double z = 0.0;
  for (int t = 0; t < 5; ++t) {
    logits[t] = h3[0] * p.head_w(0, t) + h3[1] * p.head_w(1, t) + p.head_b(0, t);
    z += std::exp(logits[t]);
  }
  const auto dist = decode_step(prefix, mem, p, cfg);
  REQUIRE(dist.size() == 5);
  for (int t = 0; t < 5; ++t) CHECK(dist[t] == doctest::Approx(std::exp(logits[t]) / z).epsilon(1e-12));
}

TEST_CASE("gradients match finite differences on a small model") {
  for (auto pos : {PosKind::kLearnedAbsolute, PosKind::kRelative}) {
    auto cfg = small_config(pos);
    cfg.d_model = 4;
    cfg.ffn_dim = 6;
    const auto p = init_params(cfg);
    const auto ex = make_example({4, 5, 6}, {7, 8}, cfg);
    for (const auto& [name, err] : testing::gradient_check(ex, p, cfg)) {
      INFO(name);
      CHECK(err.relative() <= 1e-4);
    }
  }
}

TEST_CASE("make_example truncates and appends the end token") {
  auto cfg = small_config();
  cfg.max_src_len = 4;
  cfg.max_tgt_len = 3;
  const auto ex = make_example({4, 5, 6, 7, 8}, {4, 5, 6, 7}, cfg);
  CHECK(ex.src == std::vector<int>{4, 5, 6, 2});
  CHECK(ex.tgt == std::vector<int>{4, 5});
}

TEST_CASE("zero learning rate leaves parameters unchanged and initial loss is near uniform") {
  ModelConfig cfg;
  cfg.vocab_size = 34;
  cfg.d_model = 16;
  cfg.heads = 2;
  cfg.layers = 1;
  cfg.ffn_dim = 32;
  cfg.max_src_len = 16;
  cfg.max_tgt_len = 16;
  std::vector<Example> data;
  Rng rng(3);
  for (int i = 0; i < 16; ++i) {
    std::vector<int> s;
    for (int k = 0; k < 6; ++k) s.push_back(4 + static_cast<int>(rng.below(30)));
    data.push_back(make_example(s, s, cfg));
  }
  TrainConfig t;
  t.lr = 0.0;
  t.epochs = 1;
  t.batch_size = 4;
  const auto initial = init_params(cfg);
  const auto r = train_examples(data, data, cfg, t, initial);
  CHECK(r.steps == 4);
  std::map<std::string, Matrix> before;
  visit_params(initial, [&](const std::string& n, const Matrix& m) { before[n] = m; });
  visit_params(r.params, [&](const std::string& n, const Matrix& m) { CHECK(m == before.at(n)); });
  const double uniform = std::log(34.0);
  const double loss = evaluate(data, initial, cfg).mean_loss;
  CHECK(loss >= 0.9 * uniform);
  CHECK(loss <= 1.1 * uniform);
}

TEST_CASE("split sizes follow the ten percent rule and are seeded") {
  TrainConfig t;
  const auto s = split_indices(200, t);
  CHECK(s.test.size() == 20);
  CHECK(s.val.size() == 18);
  CHECK(s.train.size() == 162);
  std::set<std::size_t> all;
  for (const auto* part : {&s.train, &s.val, &s.test}) all.insert(part->begin(), part->end());
  CHECK(all.size() == 200);
  CHECK(split_indices(200, t).test == s.test);
}

TEST_CASE("config validation") {
  auto cfg = small_config();
  cfg.heads = 3;
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
  TrainConfig t;
  t.beams = 0;
  CHECK_THROWS_AS(t.validate(), ValidationError);
  DecodeConfig d;
  d.beams = 0;
  CHECK_THROWS_AS(d.validate(), ValidationError);
  DecodeConfig n;
  n.strategy = Strategy::kNucleus;
  n.top_p = 0.0;
  CHECK_THROWS_AS(n.validate(), ValidationError);
  n.top_p = 1.2;
  CHECK_THROWS_AS(n.validate(), ValidationError);
  n.top_p = 1.0;
  CHECK_NOTHROW(n.validate());
}

TEST_CASE("beam search on the toy model finds the enumerated best and beats greedy") {
  testing::ToyLm lm;
  DecodeConfig d;
  d.beams = 2;
  d.length_penalty = 1.0;
  d.repetition_penalty = 1.0;
  d.max_len = 3;
  const auto beam = generate_ids(lm, d);
  CHECK(beam == testing::exhaustive_best(lm, 3, 1.0));
  CHECK(beam == std::vector<int>{testing::ToyLm::kB, testing::ToyLm::kEos});
  d.strategy = Strategy::kGreedy;
  CHECK(generate_ids(lm, d) == std::vector<int>{testing::ToyLm::kA, testing::ToyLm::kA, testing::ToyLm::kEos});
}

TEST_CASE("large repetition penalty prevents repeats while alternatives exist") {
  class Sticky : public StepModel {
   public:
    std::size_t vocab_size() const override { return 8; }
    std::vector<double> next_logits(std::span<const int>) const override {
      return {-50, -50, -40, 9.0, 1.0, 0.5, 0.2, 0.1};
    }
  };
  Sticky lm;
  DecodeConfig d;
  d.strategy = Strategy::kGreedy;
  d.repetition_penalty = 1e6;
  d.max_len = 5;
  const auto ids = generate_ids(lm, d);
  CHECK(std::set<int>(ids.begin(), ids.end()).size() == ids.size());
  d.repetition_penalty = 1.0;
  CHECK(generate_ids(lm, d) == std::vector<int>{3, 3, 3, 3, 3});
}

TEST_CASE("sampling is seeded and respects top-k") {
  testing::ToyLm lm;
  DecodeConfig d;
  d.strategy = Strategy::kTopK;
  d.top_k = 1;
  d.repetition_penalty = 1.0;
  d.max_len = 3;
  DecodeConfig g = d;
  g.strategy = Strategy::kGreedy;
  CHECK(generate_ids(lm, d) == generate_ids(lm, g));
  d.strategy = Strategy::kNucleus;
  d.top_p = 0.95;
  d.seed = 11;
  CHECK(generate_ids(lm, d) == generate_ids(lm, d));
}

TEST_CASE("checkpoint round trip and text generation") {
  const std::vector<std::string> corpus = {"heap overflow in parser", "sql injection in login"};
  const auto vocab = tokenize::train_bpe(corpus, 40);
  tokenize::TokenIndex index(vocab);
  auto cfg = small_config(PosKind::kRelative);
  cfg.vocab_size = static_cast<int>(index.size());
  const auto params = init_params(cfg);
  testing::TempDir dir;
  save_checkpoint(dir.file("m.json"), {cfg, vocab, params});
  const auto back = load_checkpoint(dir.file("m.json"));
  CHECK(back.config == cfg);
  CHECK(back.vocab == vocab);
  std::map<std::string, Matrix> before;
  visit_params(params, [&](const std::string& n, const Matrix& m) { before[n] = m; });
  visit_params(back.params, [&](const std::string& n, const Matrix& m) { CHECK(m == before.at(n)); });

  DecodeConfig d;
  d.max_len = 6;
  const auto a = generate("heap overflow", params, cfg, index, d);
  CHECK(a == generate("heap overflow", back.params, back.config, index, d));
}

TEST_CASE("dataset training errors") {
  const auto vocab = tokenize::train_bpe(std::vector<std::string>{"abc abd"}, 10);
  tokenize::TokenIndex index(vocab);
  ModelConfig cfg = small_config();
  DatasetManifest empty("m", GatePolicy::dual(), Stage::kRaw, "2026-01-01T00:00:00Z");
  CHECK_THROWS_AS(train(empty, TargetField::kDescription, index, TrainConfig{}, cfg), ValidationError);
  DatasetManifest unlabeled = empty;
  AugmentedInstance inst;
  inst.cve_id = "CVE-2020-0001";
  inst.description = "abc";
  inst.augmented_text = "abd";
  unlabeled.add(inst);
  CHECK_THROWS_AS(train(unlabeled, TargetField::kLabel, index, TrainConfig{}, cfg), ValidationError);
}
