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

#include <filesystem>
#include <json.hpp>
#include <string>
#include <vector>

#include "support/temp_dir.hpp"
#include "vulnforge/core/error.hpp"
#include "vulnforge/core/manifest.hpp"
#include "vulnforge/pipeline/pipeline.hpp"
#include "vulnforge/pipeline/run_config.hpp"

using namespace vulnforge;
using namespace vulnforge::pipeline;
namespace fs = std::filesystem;

TEST_CASE("config document parsing") {
  const auto doc = ConfigDocument::parse(
      "# header\n"
      "seed = 7  # trailing\n"
      "name = \"a # not a comment\"\n"
      "\n"
      "[train]\n"
      "lr = 1.5e-4\n"
      "epochs = 3\n"
      "fast = true\n");
  CHECK(doc.get_int("", "seed") == 7);
  CHECK(doc.get_string("", "name") == "a # not a comment");
  CHECK(doc.get_real("train", "lr") == doctest::Approx(1.5e-4));
  CHECK(doc.get_real("train", "epochs") == 3.0);
  CHECK(doc.get_bool("train", "fast"));
  CHECK(doc.has("train", "lr"));
  CHECK_FALSE(doc.has("train", "missing"));
  CHECK_THROWS_AS(doc.get_int("train", "lr"), ValidationError);
  CHECK_THROWS_AS(doc.get_string("train", "epochs"), ValidationError);
  CHECK_THROWS_AS(doc.check_keys("train", {"lr", "epochs"}), ValidationError);
  CHECK_NOTHROW(doc.check_keys("train", {"lr", "epochs", "fast"}));
}

TEST_CASE("config document syntax errors") {
  CHECK_THROWS_AS(ConfigDocument::parse("a = 1\na = 2\n"), ValidationError);
  CHECK_THROWS_AS(ConfigDocument::parse("just words\n"), ValidationError);
  CHECK_THROWS_AS(ConfigDocument::parse("[open\n"), ValidationError);
  CHECK_THROWS_AS(ConfigDocument::parse("a = \"unterminated\n"), ValidationError);
  CHECK_THROWS_AS(ConfigDocument::parse("bad-key = 1\n"), ValidationError);
  try {
    ConfigDocument::parse("ok = 1\n\nbroken\n");
    FAIL("expected a syntax error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find('3') != std::string::npos);
  }
}

TEST_CASE("run config validation") {
  testing::TempDir dir;
  const auto base = testing::copy_fixture("pipeline", dir);
  const auto cfg = RunConfig::load(base / "run.conf");
  CHECK(cfg.train.pos_kind == "relative");
  CHECK(cfg.output_dir == base / "out");
  CHECK(cfg.hash.size() == 64);

  auto text = testing::read_file(base / "run.conf");
  testing::write_file(base / "moved.conf", std::string(text).replace(text.find("output_dir = \"out\""), 18,
                                                                     "output_dir = \"elsewhere\""));
  CHECK(RunConfig::load(base / "moved.conf").hash == cfg.hash);

  testing::write_file(base / "seed.conf", std::string(text).replace(text.find("seed = 42"), 9, "seed = 43"));
  CHECK(RunConfig::load(base / "seed.conf").hash != cfg.hash);

  testing::write_file(base / "unknown.conf", text + "\n[extra]\nfoo = 1\n");
  CHECK_THROWS_AS(RunConfig::load(base / "unknown.conf"), ValidationError);

  testing::write_file(base / "nofeed.conf",
                      std::string(text).replace(text.find("feed.json"), 9, "missing.json"));
  CHECK_THROWS_AS(RunConfig::load(base / "nofeed.conf"), ValidationError);

  testing::write_file(base / "badpos.conf",
                      std::string(text).replace(text.find("\"relative\""), 10, "\"sinusoid\""));
  CHECK_THROWS_AS(RunConfig::load(base / "badpos.conf"), ValidationError);
}

TEST_CASE("offline pipeline run, stage reuse and failure propagation") {
  testing::TempDir dir;
  const auto base = testing::copy_fixture("pipeline", dir);
  const auto cfg = RunConfig::load(base / "run.conf");
  const auto report = run_pipeline(cfg);
  for (const auto& s : report.stages) {
    INFO(s.name << ": " << s.error);
    CHECK(s.status == StageStatus::kOk);
  }
  CHECK(report.ok());
  REQUIRE(report.stages.size() == stage_names().size());
  for (const char* f : {kRecordsFile, kParagraphsFile, kRawManifestFile, kRefinedManifestFile, kVocabFile,
                        kModelFile, kTrainReportFile, kEvalFile, kRunReportFile}) {
    INFO(f);
    CHECK(fs::exists(cfg.output_dir / f));
  }
  const auto refined = load_manifest((cfg.output_dir / kRefinedManifestFile).string());
  CHECK_FALSE(refined.empty());
  CHECK(refined.config_hash == cfg.hash);
  CHECK(validate_manifest(refined).empty());
  const auto run_report = nlohmann::json::parse(testing::read_file(cfg.output_dir / kRunReportFile));
  CHECK(run_report == to_json(report));

  const auto refined_bytes = testing::read_file(cfg.output_dir / kRefinedManifestFile);
  RunOptions only_refine;
  only_refine.only = std::vector<std::string>{"refine"};
  const auto again = run_pipeline(cfg, only_refine);
  CHECK(again.ok());
  CHECK(testing::read_file(cfg.output_dir / kRefinedManifestFile) == refined_bytes);
  for (const auto& s : again.stages) {
    CHECK(s.status == (s.name == "refine" ? StageStatus::kOk : StageStatus::kNotRun));
  }

  fs::remove(cfg.output_dir / kParagraphsFile);
  RunOptions tail;
  tail.only = std::vector<std::string>{"build", "refine", "tokenize"};
  const auto broken = run_pipeline(cfg, tail);
  CHECK_FALSE(broken.ok());
  for (const auto& s : broken.stages) {
    if (s.name == "build") {
      CHECK(s.status == StageStatus::kFailed);
      CHECK_FALSE(s.error.empty());
    } else if (s.name == "refine" || s.name == "tokenize") {
      CHECK(s.status == StageStatus::kSkipped);
    } else {
      CHECK(s.status == StageStatus::kNotRun);
    }
  }

  RunOptions bogus;
  bogus.only = std::vector<std::string>{"deploy"};
  CHECK_THROWS_AS(run_pipeline(cfg, bogus), ValidationError);
}
