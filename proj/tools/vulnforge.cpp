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

// Command-line front end. Every subcommand maps onto one library call; `run`
// drives the whole pipeline from a configuration file.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "vulnforge/acquire/feed.hpp"
#include "vulnforge/acquire/fetcher.hpp"
#include "vulnforge/acquire/scrape.hpp"
#include "vulnforge/annotate/server.hpp"
#include "vulnforge/annotate/service.hpp"
#include "vulnforge/augment/build.hpp"
#include "vulnforge/augment/gate.hpp"
#include "vulnforge/core/error.hpp"
#include "vulnforge/core/manifest.hpp"
#include "vulnforge/embed/encoder.hpp"
#include "vulnforge/evalkit/entities.hpp"
#include "vulnforge/evalkit/rouge.hpp"
#include "vulnforge/evalkit/stats.hpp"
#include "vulnforge/pipeline/pipeline.hpp"
#include "vulnforge/refine/refine.hpp"
#include "vulnforge/seq2seq/checkpoint.hpp"
#include "vulnforge/seq2seq/generate.hpp"
#include "vulnforge/seq2seq/train.hpp"
#include "vulnforge/tokenize/bpe.hpp"
#include "vulnforge/tokenize/token_index.hpp"
#include "vulnforge/tokenize/unigram.hpp"

namespace vf = vulnforge;
using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw vf::NotFoundError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& path) {
  std::istringstream in(slurp(path));
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

void emit(const json& j, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw vf::Error("cannot write " + path);
  out << j.dump(2) << '\n';
}

json stats_json(const vf::evalkit::CorpusStats& s) {
  json hist = json::object();
  for (std::size_t b = 0; b < s.histogram.size(); ++b) hist[vf::evalkit::length_bucket_label(b)] = s.histogram[b];
  auto ms = [](const vf::evalkit::MeanStd& m) { return json{{"mean", m.mean}, {"std", m.std}}; };
  return {{"texts", s.texts}, {"words", ms(s.words)}, {"chars", ms(s.chars)},
          {"sentences", ms(s.sentences)}, {"histogram", hist}};
}

vf::seq2seq::Strategy strategy_from(const std::string& s) {
  if (s == "greedy") return vf::seq2seq::Strategy::kGreedy;
  if (s == "beam") return vf::seq2seq::Strategy::kBeam;
  if (s == "top_k") return vf::seq2seq::Strategy::kTopK;
  if (s == "nucleus") return vf::seq2seq::Strategy::kNucleus;
  throw vf::ValidationError("unknown strategy: " + s);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vulnforge: vulnerability description augmentation toolkit"};
  app.require_subcommand(1);

  // ingest
  std::string feed, records_path, fixtures;
  int year_lo = 2019, year_hi = 2021;
  auto* ingest = app.add_subcommand("ingest", "Parse an NVD feed into records");
  ingest->add_option("--feed", feed, "NVD JSON feed")->required();
  ingest->add_option("--out", records_path, "records JSONL")->required();
  ingest->add_option("--year-lo", year_lo);
  ingest->add_option("--year-hi", year_hi);

  // scrape
  std::string paragraphs_path;
  auto* scrape = app.add_subcommand("scrape", "Fetch reference pages and extract paragraphs");
  scrape->add_option("--records", records_path)->required();
  scrape->add_option("--out", paragraphs_path)->required();
  scrape->add_option("--fixtures", fixtures, "offline fixture directory");

  // build
  std::string policy_name = "dual", use_enc = "builtin", mpnet_enc = "builtin:384", out_path, name = "dataset";
  std::size_t min_words = 20;
  auto* build = app.add_subcommand("build", "Gate paragraphs and build the raw dataset");
  build->add_option("--records", records_path)->required();
  build->add_option("--paragraphs", paragraphs_path)->required();
  build->add_option("--policy", policy_name, "single-use | single-mpnet | dual");
  build->add_option("--use-encoder", use_enc);
  build->add_option("--mpnet-encoder", mpnet_enc);
  build->add_option("--min-words", min_words);
  build->add_option("--name", name);
  build->add_option("--out", out_path)->required();

  // refine
  std::string in_path, encoder_spec = "builtin";
  std::optional<std::size_t> cap;
  double dedup = 0.98, diversity = 0.5;
  auto* refine = app.add_subcommand("refine", "Deduplicate and diversify augmented text");
  refine->add_option("--in", in_path)->required();
  refine->add_option("--out", out_path)->required();
  refine->add_option("--cap", cap, "word cap (250 for the capped variant)");
  refine->add_option("--encoder", encoder_spec);
  refine->add_option("--dedup", dedup);
  refine->add_option("--diversity", diversity);

  // encode
  std::vector<std::string> texts;
  auto* encode = app.add_subcommand("encode", "Embed texts and print the vectors");
  encode->add_option("--text", texts)->required();
  encode->add_option("--encoder", encoder_spec);

  // tok
  auto* tok = app.add_subcommand("tok", "Sub-word vocabularies");
  tok->require_subcommand(1);
  std::string kind = "bpe", vocab_path, text;
  std::size_t vocab_size = 1000;
  auto* tok_train = tok->add_subcommand("train", "Train a vocabulary on a manifest");
  tok_train->add_option("--in", in_path)->required();
  tok_train->add_option("--kind", kind, "bpe | unigram");
  tok_train->add_option("--size", vocab_size);
  tok_train->add_option("--out", out_path)->required();
  auto* tok_encode = tok->add_subcommand("encode", "Tokenize text with a vocabulary");
  tok_encode->add_option("--vocab", vocab_path)->required();
  tok_encode->add_option("--text", text)->required();

  // train
  std::string target = "description", pos_kind = "learned_absolute";
  vf::seq2seq::TrainConfig tcfg;
  vf::seq2seq::ModelConfig mcfg;
  std::optional<std::size_t> max_steps;
  auto* train = app.add_subcommand("train", "Train the summarization model");
  train->add_option("--data", in_path)->required();
  train->add_option("--vocab", vocab_path)->required();
  train->add_option("--target", target, "description | label");
  train->add_option("--out", out_path)->required();
  train->add_option("--lr", tcfg.lr);
  train->add_option("--batch-size", tcfg.batch_size);
  train->add_option("--epochs", tcfg.epochs);
  train->add_option("--max-steps", max_steps);
  train->add_option("--seed", tcfg.seed);
  train->add_option("--d-model", mcfg.d_model);
  train->add_option("--heads", mcfg.heads);
  train->add_option("--layers", mcfg.layers);
  train->add_option("--ffn-dim", mcfg.ffn_dim);
  train->add_option("--max-src-len", mcfg.max_src_len);
  train->add_option("--max-tgt-len", mcfg.max_tgt_len);
  train->add_option("--pos", pos_kind, "learned_absolute | relative | none");

  // generate
  std::string model_path;
  vf::seq2seq::DecodeConfig dcfg;
  std::string strategy = "beam";
  auto* generate = app.add_subcommand("generate", "Summarize text with a trained model");
  generate->add_option("--model", model_path)->required();
  generate->add_option("--in", text, "source text")->required();
  generate->add_option("--strategy", strategy, "beam | greedy | top_k | nucleus");
  generate->add_option("--beams", dcfg.beams);
  generate->add_option("--length-penalty", dcfg.length_penalty);
  generate->add_option("--repetition-penalty", dcfg.repetition_penalty);
  generate->add_option("--top-k", dcfg.top_k);
  generate->add_option("--top-p", dcfg.top_p);
  generate->add_option("--max-len", dcfg.max_len);
  generate->add_option("--seed", dcfg.seed);

  // eval rouge
  std::string pred_path, ref_path, report_path;
  auto* eval = app.add_subcommand("eval", "Evaluation metrics");
  eval->require_subcommand(1);
  auto* rouge = eval->add_subcommand("rouge", "ROUGE-1 over line-aligned files");
  rouge->add_option("--pred", pred_path)->required();
  rouge->add_option("--ref", ref_path)->required();
  rouge->add_option("--report", report_path, "output JSON (default stdout)");

  // stats
  std::size_t top_n = 10;
  auto* stats = app.add_subcommand("stats", "Corpus statistics for a manifest");
  stats->add_option("--in", in_path)->required();
  stats->add_option("--report", report_path);
  stats->add_option("--top-trigrams", top_n);

  // serve
  std::string ledger_path, static_dir, host = "127.0.0.1";
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Run the annotation API");
  serve->add_option("--manifest", in_path)->required();
  serve->add_option("--ledger", ledger_path)->required();
  serve->add_option("--port", port);
  serve->add_option("--host", host);
  serve->add_option("--static", static_dir, "UI bundle directory");

  // export
  bool with_generations = false;
  auto* exp = app.add_subcommand("export", "Fold annotations (and optionally generations) into a manifest");
  exp->add_option("--manifest", in_path)->required();
  exp->add_option("--ledger", ledger_path);
  exp->add_option("--out", out_path)->required();
  exp->add_flag("--with-generations", with_generations);
  exp->add_option("--model", model_path);

  // run
  std::string config_path;
  std::vector<std::string> only;
  auto* run = app.add_subcommand("run", "Run the pipeline from a configuration file");
  run->add_option("--config", config_path)->required();
  run->add_option("--only", only, "stage(s) to run, reusing earlier artifacts");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) {
      vf::acquire::FetchPolicy policy;
      policy.year_lo = year_lo;
      policy.year_hi = year_hi;
      policy.validate();
      std::vector<std::string> warnings;
      const auto recs = vf::acquire::ingest_feed(slurp(feed), policy, &warnings);
      for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
      vf::acquire::write_records(records_path, recs);
      std::cerr << recs.size() << " records\n";
    } else if (*scrape) {
      vf::acquire::FetchPolicy policy;
      auto fetcher = vf::acquire::make_fetcher(fixtures, policy);
      std::vector<std::string> warnings;
      const auto data = vf::acquire::scrape_all(vf::acquire::read_records(records_path), policy, *fetcher, &warnings);
      for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
      vf::acquire::write_paragraphs(paragraphs_path, data);
    } else if (*build) {
      const auto recs = vf::acquire::read_records(records_path);
      std::map<std::string, std::vector<vf::Paragraph>> by_id;
      for (auto& rp : vf::acquire::read_paragraphs(paragraphs_path)) by_id[rp.cve_id] = std::move(rp.paragraphs);
      vf::textprep::CleanPolicy clean;
      clean.min_words = min_words;
      std::vector<std::vector<vf::Paragraph>> paras;
      for (const auto& r : recs) paras.push_back(vf::augment::prepare_paragraphs(by_id[r.cve_id], clean));
      auto use = vf::embed::make_encoder(vf::embed::EncoderSpec::parse(use_enc));
      auto mpnet = vf::embed::make_encoder(vf::embed::EncoderSpec::parse(mpnet_enc));
      const vf::augment::EncoderSet encoders{{vf::kUseRole, use.get()}, {vf::kMpnetRole, mpnet.get()}};
      const auto out = vf::augment::build_dataset(recs, paras, vf::augment::policy_from_name(policy_name), encoders,
                                                  {name, ""});
      for (const auto& w : out.warnings) std::cerr << "warning: " << w << '\n';
      vf::save_manifest(out_path, out.manifest);
      std::cerr << out.manifest.size() << " instances\n";
    } else if (*refine) {
      vf::refine::RefinePolicy policy;
      policy.dedup_threshold = dedup;
      policy.diversity_threshold = diversity;
      policy.cap_words = cap;
      auto encoder = vf::embed::make_encoder(vf::embed::EncoderSpec::parse(encoder_spec));
      const auto out = vf::refine::refine_manifest(vf::load_manifest(in_path), policy, *encoder);
      for (const auto& w : out.warnings) std::cerr << "warning: " << w << '\n';
      vf::save_manifest(out_path, out.manifest);
    } else if (*encode) {
      const auto vecs = vf::embed::encode(texts, vf::embed::EncoderSpec::parse(encoder_spec));
      json j = json::array();
      for (const auto& v : vecs) j.push_back({{"encoder_id", v.encoder_id}, {"values", v.values}});
      std::cout << j.dump() << '\n';
    } else if (*tok_train) {
      const auto m = vf::load_manifest(in_path);
      std::vector<std::string> corpus;
      for (const auto& inst : m.instances()) {
        corpus.push_back(inst.augmented_text);
        corpus.push_back(inst.description);
        if (inst.label) corpus.push_back(*inst.label);
      }
      if (kind != "bpe" && kind != "unigram") throw vf::ValidationError("--kind must be bpe or unigram");
      const auto vocab = kind == "bpe" ? vf::tokenize::train_bpe(corpus, vocab_size)
                                       : vf::tokenize::train_unigram(corpus, vocab_size);
      vf::tokenize::save_vocab(out_path, vocab);
    } else if (*tok_encode) {
      const auto vocab = vf::tokenize::load_vocab(vocab_path);
      std::cout << json(vf::tokenize::tokenize_map(text, vocab)).dump() << '\n';
    } else if (*train) {
      if (target != "description" && target != "label") throw vf::ValidationError("--target must be description or label");
      tcfg.max_steps = max_steps;
      mcfg.pos_kind = vf::seq2seq::pos_kind_from_string(pos_kind);
      mcfg.seed = tcfg.seed;
      const vf::tokenize::TokenIndex index(vf::tokenize::load_vocab(vocab_path));
      mcfg.vocab_size = static_cast<int>(index.size());
      const auto field = target == "label" ? vf::seq2seq::TargetField::kLabel : vf::seq2seq::TargetField::kDescription;
      const auto out = vf::seq2seq::train(vf::load_manifest(in_path), field, index, tcfg, mcfg);
      vf::seq2seq::save_checkpoint(out_path, {mcfg, index.vocab(), out.result.params});
      for (std::size_t e = 0; e < out.result.train_loss.size(); ++e) {
        std::cerr << "epoch " << e + 1 << " train " << out.result.train_loss[e] << " val "
                  << out.result.val_loss[e] << '\n';
      }
    } else if (*generate) {
      const auto ckpt = vf::seq2seq::load_checkpoint(model_path);
      dcfg.strategy = strategy_from(strategy);
      const vf::tokenize::TokenIndex index(ckpt.vocab);
      std::cout << vf::seq2seq::generate(text, ckpt.params, ckpt.config, index, dcfg) << '\n';
    } else if (*rouge) {
      const auto preds = lines_of(pred_path);
      const auto refs = lines_of(ref_path);
      if (preds.size() != refs.size()) throw vf::ValidationError("--pred and --ref differ in line count");
      json rows = json::array();
      double r = 0, p = 0, f = 0;
      for (std::size_t i = 0; i < preds.size(); ++i) {
        const auto s = vf::evalkit::rouge1(preds[i], refs[i]);
        rows.push_back({{"recall", s.recall}, {"precision", s.precision}, {"f1", s.f1}});
        r += s.recall;
        p += s.precision;
        f += s.f1;
      }
      json report = {{"pairs", preds.size()}, {"scores", rows}};
      if (!preds.empty()) {
        const double n = static_cast<double>(preds.size());
        report["mean"] = {{"recall", r / n}, {"precision", p / n}, {"f1", f / n}};
      }
      emit(report, report_path);
    } else if (*stats) {
      const auto m = vf::load_manifest(in_path);
      std::vector<std::string> aug, desc;
      for (const auto& inst : m.instances()) {
        aug.push_back(inst.augmented_text);
        desc.push_back(inst.description);
      }
      json trigrams = json::array();
      for (const auto& t : vf::evalkit::trigram_counts(aug, top_n)) trigrams.push_back({{"trigram", t.text}, {"count", t.count}});
      emit({{"augmented", stats_json(vf::evalkit::corpus_stats(aug))},
            {"descriptions", stats_json(vf::evalkit::corpus_stats(desc))},
            {"entities", vf::evalkit::entity_counts(aug, vf::evalkit::bundled_gazetteer())},
            {"trigrams", trigrams}},
           report_path);
    } else if (*serve) {
      vf::annotate::AnnotationService service(vf::load_manifest(in_path), ledger_path);
      vf::annotate::ServerOptions opts;
      opts.host = host;
      opts.port = port;
      opts.token = vf::annotate::token_from_env();
      if (!static_dir.empty()) opts.static_dir = static_dir;
      vf::annotate::AnnotationServer server(service, opts);
      std::cerr << "serving on " << host << ":" << port << (opts.token ? " (token required)" : "") << '\n';
      server.run();
    } else if (*exp) {
      auto m = vf::load_manifest(in_path);
      std::map<std::string, vf::annotate::SampleState> state;
      if (!ledger_path.empty()) state = vf::annotate::AnnotationService(m, ledger_path).snapshot();
      std::optional<vf::seq2seq::Checkpoint> ckpt;
      if (with_generations) {
        if (model_path.empty()) throw vf::ValidationError("--with-generations needs --model");
        ckpt = vf::seq2seq::load_checkpoint(model_path);
      }
      std::optional<vf::tokenize::TokenIndex> index;
      if (ckpt) index.emplace(ckpt->vocab);
      vf::DatasetManifest out(m.name, m.encoder_policy, m.stage, m.created_at);
      out.config_hash = m.config_hash;
      for (auto inst : m.instances()) {
        if (auto it = state.find(inst.cve_id); it != state.end()) {
          inst.label = it->second.instance.label;
          inst.grades = it->second.grades;
        }
        if (ckpt) inst.generated = vf::seq2seq::generate(inst.augmented_text, ckpt->params, ckpt->config, *index, dcfg);
        out.add(std::move(inst));
      }
      vf::save_manifest(out_path, out);
    } else if (*run) {
      const auto cfg = vf::pipeline::RunConfig::load(config_path);
      vf::pipeline::RunOptions opts;
      if (!only.empty()) opts.only = only;
      opts.log = &std::cerr;
      const auto report = vf::pipeline::run_pipeline(cfg, opts);
      std::cout << vf::pipeline::to_json(report).dump(2) << '\n';
      return report.ok() ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
