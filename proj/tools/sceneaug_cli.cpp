// Copyright 2026 The SceneAug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: ingest, synth, augment, eval, ablate, serve-annotate.

#include <CLI11.hpp>
#include <json.hpp>

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "sceneaug/annotation_server.hpp"
#include "sceneaug/assets.hpp"
#include "sceneaug/augment.hpp"
#include "sceneaug/benchmark.hpp"
#include "sceneaug/codec.hpp"
#include "sceneaug/dataset_io.hpp"
#include "sceneaug/evaluation.hpp"
#include "sceneaug/ingest.hpp"
#include "sceneaug/service_config.hpp"
#include "sceneaug/synth.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::json;
using namespace sceneaug;

namespace {

struct Options {
  std::string config_path;
  std::string dataset_dir;
  std::string out_dir;
  std::string captures_dir;
  std::string task = "put the red box on the blue coaster";
  std::string synth_kind = "demos";
  std::string baseline;
  std::string test_dir;
  std::string report_path;
  std::string csv_path;
  std::string counts = "0,10,50,100";
  std::string host = "127.0.0.1";
  int count = -1;
  int seeds = 3;
  int port = 0;
  std::int64_t seed = -1;
  bool resume = false;
  bool benchmark = false;
};

ServiceConfig LoadConfig(const Options& o) {
  ServiceConfig c = o.config_path.empty() ? ServiceConfig{} : ServiceConfig::Load(o.config_path);
  if (!o.dataset_dir.empty()) c.dataset_dir = o.dataset_dir;
  if (o.count >= 0) c.augment.count = o.count;
  if (o.seed >= 0) c.augment.master_seed = static_cast<std::uint64_t>(o.seed);
  if (o.port > 0) c.listen_port = o.port;
  c.validate();
  return c;
}

AssetLibrary LoadAssets(const ServiceConfig& c) {
  return c.assets_dir.empty() ? StandardAssetLibrary(0) : AssetLibrary::Load(c.assets_dir);
}

std::string RequireDataset(const ServiceConfig& c) {
  if (c.dataset_dir.empty()) {
    Fail(ErrorCode::kInvalidArgument, "no dataset: set dataset_dir in the config or pass --dataset");
  }
  return c.dataset_dir;
}

void Print(const Json& j) { std::cout << j.dump(2) << std::endl; }

std::vector<int> ParseCounts(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      Fail(ErrorCode::kInvalidArgument, "bad count '" + item + "' in --counts");
    }
  }
  return out;
}

Json RatesJson(const Rates& r) {
  return {{"scenes", r.scenes}, {"pick", r.pick}, {"place", r.place}, {"full", r.full}};
}

int RunIngest(const Options& o) {
  const ServiceConfig c = LoadConfig(o);
  DemoDataset ds = IngestCaptures(o.captures_dir, c.topdown, o.task);
  ds.manifest.config_digest = c.digest();
  SaveDataset(ds, o.out_dir);
  Print({{"demos", ds.demos.size()}, {"config_digest", c.digest()},
         {"dataset_digest", DatasetDigest(ds)}});
  return 0;
}

int RunSynth(const Options& o) {
  const ServiceConfig c = LoadConfig(o);
  const std::uint64_t seed = o.seed >= 0 ? static_cast<std::uint64_t>(o.seed) : 0;
  if (o.synth_kind == "demos") {
    DemoDataset ds = SynthDataset(seed, o.count >= 0 ? o.count : 10, SynthPalette{}, c.topdown);
    ds.manifest.config_digest = c.digest();
    SaveDataset(ds, o.out_dir);
    Print({{"demos", ds.demos.size()}, {"dataset_digest", DatasetDigest(ds)}});
  } else if (o.synth_kind == "assets") {
    StandardAssetLibrary(seed).Save(o.out_dir);
    Print({{"assets_dir", o.out_dir}});
  } else if (o.synth_kind == "benchmark") {
    BenchmarkConfig bc;
    bc.seed = seed;
    const BenchmarkSuite suite = MakeBenchmark(bc);
    const fs::path out = o.out_dir;
    SaveDataset(suite.train, out / "train");
    SaveDataset(suite.test, out / "test");
    suite.train_library.Save(out / "assets");
    ServiceConfig bench_config = c;
    bench_config.dataset_dir = (out / "train").string();
    bench_config.assets_dir = (out / "assets").string();
    bench_config.augment = suite.augment;
    bench_config.eval = suite.eval;
    bench_config.topdown = bc.topdown;
    WriteFileAtomic(out / "config.json", bench_config.to_json());
    Print({{"train", suite.train.demos.size()}, {"test", suite.test.demos.size()},
           {"config", (out / "config.json").string()}});
  } else {
    Fail(ErrorCode::kInvalidArgument, "synth kind must be demos, assets or benchmark");
  }
  return 0;
}

fs::path PartialDir(const std::string& out) { return fs::path(out + ".partial"); }

int RunAugment(const Options& o) {
  const ServiceConfig c = LoadConfig(o);
  const DemoDataset input = LoadDataset(RequireDataset(c));
  const AssetLibrary library = LoadAssets(c);
  DemoDataset output;
  if (!o.baseline.empty()) {
    output = AugmentDatasetBaseline(input, BaselineKindFromString(o.baseline), c.augment.count,
                                    c.augment.master_seed, library);
  } else {
    const PromptVocab vocab = PromptVocab::Default(library);
    const BackendConfig backend = c.backend;
    std::optional<AugmentCheckpoint> resume;
    const fs::path partial = PartialDir(o.out_dir);
    if (o.resume && fs::exists(partial / "checkpoint.json")) {
      const Json cp = Json::parse(ReadFileText(partial / "checkpoint.json"));
      if (cp.at("config_digest").get<std::string>() != c.digest()) {
        Fail(ErrorCode::kInvalidArgument, "checkpoint was written with a different config");
      }
      AugmentCheckpoint checkpoint;
      checkpoint.completed = LoadDataset(partial / "demos").demos;
      checkpoint.next_task = cp.at("next_task").get<std::size_t>();
      resume = std::move(checkpoint);
    }
    try {
      output = AugmentDataset(input, c.augment, library, vocab,
                              [backend] { return MakeBackend(backend); }, resume);
    } catch (const AugmentInterrupted& e) {
      DemoDataset done;
      done.demos = e.checkpoint().completed;
      done.sync_manifest();
      SaveDataset(done, partial / "demos");
      WriteFileAtomic(partial / "checkpoint.json",
                      Json{{"next_task", e.checkpoint().next_task},
                           {"config_digest", c.digest()}}
                          .dump(2));
      throw;
    }
    std::error_code ec;
    fs::remove_all(partial, ec);
  }
  output.manifest.config_digest = c.digest();
  SaveDataset(output, o.out_dir);
  Print({{"demos", output.demos.size()},
         {"config_digest", c.digest()},
         {"dataset_digest", DatasetDigest(output)}});
  return 0;
}

int RunEval(const Options& o) {
  const ServiceConfig c = LoadConfig(o);
  const DemoDataset train = LoadDataset(RequireDataset(c));
  const DemoDataset test = o.test_dir.empty() ? train : LoadDataset(o.test_dir);
  const EvalReport report = Evaluate(Fit(train, c.eval), test, c.eval);
  if (!o.report_path.empty()) WriteFileAtomic(o.report_path, report.to_json());
  if (!o.csv_path.empty()) WriteFileAtomic(o.csv_path, report.to_csv());
  Json conditions = Json::object();
  for (const auto& [cond, r] : report.by_condition) {
    conditions[std::string(ToString(cond))] = RatesJson(r);
  }
  Print({{"config_digest", c.digest()}, {"overall", RatesJson(report.overall)},
         {"conditions", conditions}});
  return 0;
}

int RunAblate(const Options& o) {
  ServiceConfig c = LoadConfig(o);
  const std::vector<int> counts = ParseCounts(o.counts);
  std::vector<std::uint64_t> seeds;
  for (int s = 0; s < o.seeds; ++s) seeds.push_back(static_cast<std::uint64_t>(s));
  DemoDataset train, test;
  AssetLibrary library;
  std::optional<PromptVocab> vocab;
  if (o.benchmark) {
    BenchmarkConfig bc;
    bc.seed = o.seed >= 0 ? static_cast<std::uint64_t>(o.seed) : 0;
    BenchmarkSuite suite = MakeBenchmark(bc);
    train = std::move(suite.train);
    test = std::move(suite.test);
    library = std::move(suite.train_library);
    vocab = suite.train_vocab;
    c.augment = suite.augment;
    c.eval = suite.eval;
  } else {
    train = LoadDataset(RequireDataset(c));
    if (o.test_dir.empty()) Fail(ErrorCode::kInvalidArgument, "ablate needs --test or --benchmark");
    test = LoadDataset(o.test_dir);
    library = LoadAssets(c);
    vocab = PromptVocab::Default(library);
  }
  const BackendConfig backend = c.backend;
  Curve curve;
  if (o.baseline.empty()) {
    curve = AblationRun(train, counts, seeds, c.augment, library, *vocab,
                        [backend] { return MakeBackend(backend); }, c.eval, test);
  } else {
    curve = BaselineRun(train, BaselineKindFromString(o.baseline), counts, seeds,
                        c.augment.master_seed, library, c.eval, test);
  }
  const std::string csv = curve.to_csv();
  if (!o.csv_path.empty()) WriteFileAtomic(o.csv_path, csv);
  std::cout << csv;
  return 0;
}

AnnotationServer* g_server = nullptr;

void HandleSignal(int) {
  if (g_server) g_server->Stop();
}

int RunServe(const Options& o) {
  const ServiceConfig c = LoadConfig(o);
  AnnotationServer server(RequireDataset(c));
  const int port = server.Bind(o.host, c.listen_port);
  g_server = &server;
  std::signal(SIGINT, HandleSignal);
  std::signal(SIGTERM, HandleSignal);
  Print({{"listening", o.host + ":" + std::to_string(port)}, {"config_digest", c.digest()}});
  server.Serve();
  g_server = nullptr;
  return 0;
}

void ReportError(const std::string& code, const std::string& message) {
  std::cerr << Json{{"error", code}, {"message", message}}.dump() << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Scene augmentation for pick-and-place demonstrations"};
  app.require_subcommand(1);
  Options o;
  auto add_config = [&](CLI::App* cmd) {
    cmd->add_option("--config", o.config_path, "JSON config file");
  };

  auto* ingest = app.add_subcommand("ingest", "RGBD captures to unannotated top-down demos");
  add_config(ingest);
  ingest->add_option("--captures", o.captures_dir, "directory of capture folders")->required();
  ingest->add_option("--out", o.out_dir, "output dataset directory")->required();
  ingest->add_option("--task", o.task, "task text for every demo");

  auto* synth = app.add_subcommand("synth", "synthetic demos, asset library or benchmark");
  add_config(synth);
  synth->add_option("kind", o.synth_kind, "demos | assets | benchmark");
  synth->add_option("--out", o.out_dir, "output directory")->required();
  synth->add_option("--count", o.count, "number of demos");
  synth->add_option("--seed", o.seed, "seed");

  auto* augment = app.add_subcommand("augment", "expand a dataset with augmentations");
  add_config(augment);
  augment->add_option("--dataset", o.dataset_dir, "input dataset (overrides config)");
  augment->add_option("--out", o.out_dir, "output dataset directory")->required();
  augment->add_option("--count", o.count, "augmentations per demo");
  augment->add_option("--seed", o.seed, "master seed");
  augment->add_option("--baseline", o.baseline,
                      "copy_paste | random_background | random_distractors | spatial");
  augment->add_flag("--resume", o.resume, "continue from an interrupted run");

  auto* eval = app.add_subcommand("eval", "fit on a dataset and score a test set");
  add_config(eval);
  eval->add_option("--dataset", o.dataset_dir, "training dataset (overrides config)");
  eval->add_option("--test", o.test_dir, "test dataset (default: the training set)");
  eval->add_option("--report", o.report_path, "write the JSON report here");
  eval->add_option("--csv", o.csv_path, "write per-scene CSV here");

  auto* ablate = app.add_subcommand("ablate", "success rate versus augmentation count");
  add_config(ablate);
  ablate->add_option("--dataset", o.dataset_dir, "training dataset (overrides config)");
  ablate->add_option("--test", o.test_dir, "test dataset");
  ablate->add_flag("--benchmark", o.benchmark, "use the built-in synthetic benchmark");
  ablate->add_option("--counts", o.counts, "comma-separated augmentation counts");
  ablate->add_option("--seeds", o.seeds, "number of replicate seeds")->check(CLI::PositiveNumber);
  ablate->add_option("--seed", o.seed, "benchmark seed");
  ablate->add_option("--baseline", o.baseline, "run a baseline augmenter instead");
  ablate->add_option("--csv", o.csv_path, "also write the curve here");

  auto* serve = app.add_subcommand("serve-annotate", "annotation REST API over a dataset");
  add_config(serve);
  serve->add_option("--dataset", o.dataset_dir, "dataset directory (overrides config)");
  serve->add_option("--port", o.port, "listen port (overrides config)");
  serve->add_option("--host", o.host, "listen address");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    ReportError("UsageError", e.what());
    return 2;
  }

  try {
    if (ingest->parsed()) return RunIngest(o);
    if (synth->parsed()) return RunSynth(o);
    if (augment->parsed()) return RunAugment(o);
    if (eval->parsed()) return RunEval(o);
    if (ablate->parsed()) return RunAblate(o);
    if (serve->parsed()) return RunServe(o);
  } catch (const Error& e) {
    ReportError(std::string(ToString(e.code())), e.what());
    return 1;
  } catch (const std::exception& e) {
    ReportError("InternalError", e.what());
    return 1;
  }
  return 0;
}
