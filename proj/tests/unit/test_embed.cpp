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

#include <cmath>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "vulnforge/core/error.hpp"
#include "vulnforge/embed/encoder.hpp"

using namespace vulnforge;
using namespace vulnforge::embed;

namespace {

std::vector<EmbeddingVector> builtin(std::vector<std::string> texts) {
  BuiltinEncoder enc{EncoderSpec{}};
  return enc.encode(texts);
}

// Serves {"vectors": ...} with `dim` entries per text on a free port.
class FakeEmbeddingService {
 public:
  explicit FakeEmbeddingService(std::size_t dim) {
    server_.Post("/embed", [dim](const httplib::Request& req, httplib::Response& res) {
      const auto body = nlohmann::json::parse(req.body);
      nlohmann::json vectors = nlohmann::json::array();
      for (const auto& t : body.at("texts")) {
        std::vector<double> v(dim, 0.0);
        v[t.get<std::string>().size() % dim] = 3.0;
        vectors.push_back(v);
      }
      res.set_content(nlohmann::json{{"vectors", vectors}}.dump(), "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~FakeEmbeddingService() {
    server_.stop();
    thread_.join();
  }
  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/embed"; }

 private:
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace

TEST_CASE("builtin encoding of a b a matches the reference hash scheme") {
  // Buckets and signs computed by an independent script over FNV-1a plus
  // splitmix64: "a" lands in bucket 253 (positive), "b" in bucket 50 (negative).
  const auto v = builtin({"a b a"}).at(0);
  REQUIRE(v.dimension() == 256);
  for (std::size_t i = 0; i < 256; ++i) {
    if (i == 253) {
      CHECK(v.values[i] == doctest::Approx(2.0 / std::sqrt(5.0)).epsilon(1e-12));
    } else if (i == 50) {
      CHECK(v.values[i] == doctest::Approx(-1.0 / std::sqrt(5.0)).epsilon(1e-12));
    } else {
      CHECK(v.values[i] == 0.0);
    }
  }
  CHECK(BuiltinEncoder::token_hash("a") == 0x570dc2694a1456fdULL);
  CHECK(BuiltinEncoder::token_hash("b") == 0xab532bab7c82cf32ULL);
}

TEST_CASE("builtin encoder is deterministic and bag-of-words") {
  const auto v = builtin({"remote code execution", "remote code execution", "execution code remote",
                          "Remote CODE execution"});
  CHECK(v[0] == v[1]);
  CHECK(v[0] == v[2]);
  CHECK(v[0] == v[3]);
  CHECK(builtin({}).empty());
}

TEST_CASE("builtin vectors are unit length and empty text maps to e0") {
  const auto v = builtin({"some words here", "   "});
  double n = 0.0;
  for (double x : v[0].values) n += x * x;
  CHECK(n == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(v[1].values[0] == 1.0);
  CHECK(cosine(v[1], v[1]) == doctest::Approx(1.0));
}

TEST_CASE("cosine examples") {
  const std::vector<double> e1 = {1.0, 0.0};
  const std::vector<double> e2 = {0.0, 1.0};
  const std::vector<double> d = {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
  CHECK(cosine(e1, e1) == doctest::Approx(1.0));
  CHECK(cosine(e1, e2) == doctest::Approx(0.0));
  CHECK(std::abs(cosine(d, e1) - 0.70710678118) < 1e-6);
}

TEST_CASE("cosine is symmetric, bounded and scale invariant") {
  const std::vector<double> a = {0.3, -1.2, 4.0};
  const std::vector<double> b = {2.0, 0.5, -0.7};
  const std::vector<double> b3 = {6.0, 1.5, -2.1};
  CHECK(cosine(a, b) == doctest::Approx(cosine(b, a)));
  CHECK(cosine(a, b) == doctest::Approx(cosine(a, b3)));
  CHECK(std::abs(cosine(a, b)) <= 1.0 + 1e-9);
}

TEST_CASE("cosine errors") {
  const std::vector<double> a = {1.0, 0.0};
  const std::vector<double> z = {0.0, 0.0};
  const std::vector<double> c = {1.0, 0.0, 0.0};
  CHECK_THROWS_AS(cosine(a, z), ValidationError);
  CHECK_THROWS_AS(cosine(a, c), ValidationError);
  EmbeddingVector x{{1.0, 0.0}, "one"};
  EmbeddingVector y{{1.0, 0.0}, "two"};
  CHECK_THROWS_AS(cosine(x, y), ValidationError);
}

TEST_CASE("encoder spec parsing") {
  CHECK(EncoderSpec::parse("builtin").dimension == 256);
  const auto s = EncoderSpec::parse("builtin:384");
  CHECK(s.dimension == 384);
  CHECK(s.encoder_id == "builtin-384");
  const auto r = EncoderSpec::parse("remote:http://localhost:9/embed#512");
  CHECK(r.kind == EncoderKind::kRemote);
  CHECK(r.dimension == 512);
  CHECK(r.endpoint == std::optional<std::string>("http://localhost:9/embed"));
  CHECK_THROWS_AS(EncoderSpec::parse("word2vec"), ValidationError);
  EncoderSpec bad;
  bad.kind = EncoderKind::kRemote;
  CHECK_THROWS_AS(bad.validate(), ValidationError);
}

TEST_CASE("remote encoder speaks the texts/vectors protocol") {
  FakeEmbeddingService service(4);
  auto spec = EncoderSpec::parse("remote:" + service.url() + "#4");
  spec.batch_size = 2;
  RemoteEncoder enc(spec);
  const std::vector<std::string> texts = {"a", "bb", "ccc", "dddd", "eeeee"};
  const auto v = enc.encode(texts);
  REQUIRE(v.size() == 5);
  for (std::size_t i = 0; i < v.size(); ++i) {
    CHECK(v[i].values[texts[i].size() % 4] == doctest::Approx(1.0));
    CHECK(v[i].encoder_id == spec.encoder_id);
  }
}

TEST_CASE("remote encoder rejects the wrong dimension") {
  FakeEmbeddingService service(3);
  RemoteEncoder enc(EncoderSpec::parse("remote:" + service.url() + "#4"));
  const std::vector<std::string> texts = {"x"};
  CHECK_THROWS_AS(enc.encode(texts), ContractError);
}

TEST_CASE("unreachable remote encoder is a transport error") {
  httplib::Server probe;
  const int port = probe.bind_to_any_port("127.0.0.1");
  probe.stop();
  auto spec = EncoderSpec::parse("remote:http://127.0.0.1:" + std::to_string(port) + "/embed#4");
  spec.timeout_ms = 500;
  RemoteEncoder enc(spec);
  const std::vector<std::string> texts = {"x"};
  CHECK_THROWS_AS(enc.encode(texts), TransportError);
}
