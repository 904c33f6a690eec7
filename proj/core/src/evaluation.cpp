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

#include "sceneaug/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>

#include "json_util.hpp"

namespace sceneaug {

using internal::Json;

bool WithinRadius(Pixel predicted, Pixel truth, int radius_px) {
  const long du = predicted.u - truth.u, dv = predicted.v - truth.v;
  return du * du + dv * dv <= static_cast<long>(radius_px) * radius_px;
}

namespace {

Rates Aggregate(const std::vector<const SceneRecord*>& records) {
  Rates r;
  r.scenes = records.size();
  if (records.empty()) return r;
  std::size_t pick = 0, place = 0, full = 0;
  for (const auto* rec : records) {
    pick += rec->pick_hit;
    place += rec->place_hit;
    full += rec->full_success;
  }
  const double n = static_cast<double>(records.size());
  r.pick = pick / n;
  r.place = place / n;
  r.full = full / n;
  return r;
}

void Summarize(EvalReport& report) {
  std::vector<const SceneRecord*> all;
  std::map<Condition, std::vector<const SceneRecord*>> groups;
  for (const auto& rec : report.records) {
    all.push_back(&rec);
    groups[rec.condition].push_back(&rec);
  }
  report.overall = Aggregate(all);
  report.by_condition.clear();
  for (const auto& [c, recs] : groups) report.by_condition[c] = Aggregate(recs);
}

Json RatesJson(const Rates& r) {
  return {{"scenes", r.scenes}, {"pick", r.pick}, {"place", r.place}, {"full", r.full}};
}

// Runs body(i) for i in [0, n) on up to hardware_concurrency threads.
void ParallelFor(std::size_t n, const std::function<void(std::size_t)>& body) {
  const unsigned workers = std::min<std::size_t>(std::max(1u, std::thread::hardware_concurrency()), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard lock(mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::string EvalReport::to_json() const {
  Json scenes = Json::array();
  for (const auto& r : records) {
    Json s{{"id", r.id},
           {"task", r.task},
           {"condition", ToString(r.condition)},
           {"true_pick", internal::ToJson(r.true_pick)},
           {"true_place", internal::ToJson(r.true_place)},
           {"pick_hit", r.pick_hit},
           {"place_hit", r.place_hit},
           {"full_success", r.full_success}};
    s["predicted_pick"] = r.predicted_pick ? internal::ToJson(*r.predicted_pick) : Json(nullptr);
    s["predicted_place"] = r.predicted_place ? internal::ToJson(*r.predicted_place) : Json(nullptr);
    scenes.push_back(std::move(s));
  }
  Json conditions = Json::object();
  for (const auto& [c, r] : by_condition) conditions[std::string(ToString(c))] = RatesJson(r);
  return Json{{"overall", RatesJson(overall)}, {"conditions", conditions}, {"scenes", scenes}}
      .dump(2);
}

std::string EvalReport::to_csv() const {
  std::ostringstream out;
  out << "id,task,condition,pred_pick_u,pred_pick_v,pred_place_u,pred_place_v,"
         "true_pick_u,true_pick_v,true_place_u,true_place_v,pick_hit,place_hit,full_success\n";
  auto px = [&](const std::optional<Pixel>& p) {
    if (p) {
      out << p->u << ',' << p->v;
    } else {
      out << ',';
    }
  };
  for (const auto& r : records) {
    // Task strings are free text; quote them.
    std::string task = r.task;
    std::string quoted = "\"";
    for (char ch : task) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    quoted += '"';
    out << r.id << ',' << quoted << ',' << ToString(r.condition) << ',';
    px(r.predicted_pick);
    out << ',';
    px(r.predicted_place);
    out << ',' << r.true_pick.u << ',' << r.true_pick.v << ',' << r.true_place.u << ','
        << r.true_place.v << ',' << r.pick_hit << ',' << r.place_hit << ',' << r.full_success
        << '\n';
  }
  return out.str();
}

EvalReport Evaluate(const AffordanceModel& model, const DemoDataset& testset,
                    const EvalConfig& config) {
  config.validate();
  std::vector<const Demo*> scenes;
  for (const auto& d : testset.demos) {
    if (d.action) scenes.push_back(&d);
  }
  EvalReport report;
  report.records.resize(scenes.size());
  ParallelFor(scenes.size(), [&](std::size_t i) {
    const Demo& d = *scenes[i];
    SceneRecord& rec = report.records[i];
    rec.id = d.id;
    rec.task = d.task_text;
    rec.condition = d.condition;
    rec.true_pick = d.action->pick;
    rec.true_place = d.action->place;
    try {
      const Prediction p = Predict(model, d.obs, d.task_text, config.exclusion_radius());
      rec.predicted_pick = p.pick;
      rec.predicted_place = p.place;
      rec.pick_hit = WithinRadius(p.pick, rec.true_pick, config.success_radius_px);
      rec.place_hit = WithinRadius(p.place, rec.true_place, config.success_radius_px);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kUnknownTask) throw;
    }
    rec.full_success = rec.pick_hit && rec.place_hit;
  });
  Summarize(report);
  return report;
}

double Curve::mean_full(int count, std::optional<Condition> condition) const {
  double sum = 0.0;
  int n = 0;
  for (const auto& p : points) {
    if (p.count != count) continue;
    if (condition) {
      auto it = p.by_condition.find(*condition);
      if (it == p.by_condition.end()) continue;
      sum += it->second.full;
    } else {
      sum += p.overall.full;
    }
    ++n;
  }
  return n == 0 ? 0.0 : sum / n;
}

std::string Curve::to_csv() const {
  std::ostringstream out;
  out << "count,seed,pick_rate,place_rate,full_rate\n";
  out.precision(6);
  for (const auto& p : points) {
    out << p.count << ',' << p.seed << ',' << p.overall.pick << ',' << p.overall.place << ','
        << p.overall.full << '\n';
  }
  return out.str();
}

DemoDataset TakePrefix(const DemoDataset& augmented, std::size_t originals, int full_count,
                       int count) {
  if (count < 0 || count > full_count) Fail(ErrorCode::kInvalidArgument, "prefix count out of range");
  const std::size_t stride = static_cast<std::size_t>(full_count) + 1;
  if (augmented.demos.size() != originals * stride) {
    Fail(ErrorCode::kDimMismatch, "augmented dataset does not match its layout");
  }
  DemoDataset out;
  out.manifest = augmented.manifest;
  for (std::size_t i = 0; i < originals; ++i) {
    for (int k = 0; k <= count; ++k) out.demos.push_back(augmented.demos[i * stride + k]);
  }
  out.sync_manifest();
  return out;
}

Curve RunCurve(const DemoDataset& base, const std::vector<int>& counts,
               const std::vector<std::uint64_t>& seeds, const Augmenter& augment,
               const EvalConfig& eval_config, const DemoDataset& testset) {
  if (counts.empty() || !std::is_sorted(counts.begin(), counts.end()) || counts.front() < 0) {
    Fail(ErrorCode::kInvalidArgument, "counts must be non-empty, non-negative and ascending");
  }
  if (seeds.empty()) Fail(ErrorCode::kInvalidArgument, "at least one seed is required");
  const int max_count = counts.back();
  std::map<std::pair<int, std::uint64_t>, CurvePoint> cells;
  for (std::uint64_t seed : seeds) {
    const DemoDataset full = augment(base, max_count, seed);
    for (int count : counts) {
      const DemoDataset train = TakePrefix(full, base.demos.size(), max_count, count);
      const EvalReport report = Evaluate(Fit(train, eval_config), testset, eval_config);
      cells[{count, seed}] = {count, seed, report.overall, report.by_condition};
    }
  }
  Curve curve;
  for (int count : counts) {
    for (std::uint64_t seed : seeds) curve.points.push_back(cells.at({count, seed}));
  }
  return curve;
}

Curve AblationRun(const DemoDataset& base, const std::vector<int>& counts,
                  const std::vector<std::uint64_t>& seeds, const AugmentConfig& config,
                  const AssetLibrary& library, const PromptVocab& vocab,
                  const BackendFactory& backends, const EvalConfig& eval_config,
                  const DemoDataset& testset) {
  return RunCurve(
      base, counts, seeds,
      [&](const DemoDataset& d, int count, std::uint64_t seed) {
        AugmentConfig c = config;
        c.count = count;
        c.master_seed = DeriveSeed(config.master_seed, {seed});
        return AugmentDataset(d, c, library, vocab, backends);
      },
      eval_config, testset);
}

Curve BaselineRun(const DemoDataset& base, BaselineKind kind, const std::vector<int>& counts,
                  const std::vector<std::uint64_t>& seeds, std::uint64_t master_seed,
                  const AssetLibrary& library, const EvalConfig& eval_config,
                  const DemoDataset& testset) {
  return RunCurve(
      base, counts, seeds,
      [&](const DemoDataset& d, int count, std::uint64_t seed) {
        return AugmentDatasetBaseline(d, kind, count, DeriveSeed(master_seed, {seed}), library);
      },
      eval_config, testset);
}

}  // namespace sceneaug
