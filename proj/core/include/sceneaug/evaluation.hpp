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

#ifndef SCENEAUG_EVALUATION_HPP_
#define SCENEAUG_EVALUATION_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sceneaug/affordance.hpp"
#include "sceneaug/augment.hpp"

namespace sceneaug {

struct SceneRecord {
  std::string id;
  std::string task;
  Condition condition = Condition::kNone;
  std::optional<Pixel> predicted_pick;  // absent when the task is unknown to the model
  std::optional<Pixel> predicted_place;
  Pixel true_pick;
  Pixel true_place;
  bool pick_hit = false;
  bool place_hit = false;
  bool full_success = false;
};

struct Rates {
  std::size_t scenes = 0;
  double pick = 0.0;
  double place = 0.0;
  double full = 0.0;
};

struct EvalReport {
  std::vector<SceneRecord> records;
  Rates overall;
  std::map<Condition, Rates> by_condition;

  std::string to_json() const;
  std::string to_csv() const;  // one row per scene
};

/// Hit iff the Euclidean pixel distance is <= radius.
bool WithinRadius(Pixel predicted, Pixel truth, int radius_px);

/// Scenes without an action are skipped. Unknown tasks count as misses.
EvalReport Evaluate(const AffordanceModel& model, const DemoDataset& testset,
                    const EvalConfig& config);

struct CurvePoint {
  int count = 0;
  std::uint64_t seed = 0;
  Rates overall;
  std::map<Condition, Rates> by_condition;
};

struct Curve {
  std::vector<CurvePoint> points;  // count-major, then seed

  /// Mean full-success rate over seeds for one count (optionally one condition).
  double mean_full(int count, std::optional<Condition> condition = std::nullopt) const;
  std::string to_csv() const;  // count,seed,pick_rate,place_rate,full_rate
};

/// Produces the training set for (count, replicate seed); must contain the originals.
using Augmenter = std::function<DemoDataset(const DemoDataset& base, int count, std::uint64_t seed)>;

/// For every seed, augments once at the largest count and evaluates each count on the
/// per-demo prefix of the augmentations. Equivalent to augmenting at every count
/// separately because augmentation i of a demo does not depend on the count.
Curve RunCurve(const DemoDataset& base, const std::vector<int>& counts,
               const std::vector<std::uint64_t>& seeds, const Augmenter& augment,
               const EvalConfig& eval_config, const DemoDataset& testset);

/// Each original followed by its first `count` augmentations.
DemoDataset TakePrefix(const DemoDataset& augmented, std::size_t originals, int full_count,
                       int count);

/// Curve with the generative operators. Replicate seed s uses master seed
/// DeriveSeed(config.master_seed, {s}).
Curve AblationRun(const DemoDataset& base, const std::vector<int>& counts,
                  const std::vector<std::uint64_t>& seeds, const AugmentConfig& config,
                  const AssetLibrary& library, const PromptVocab& vocab,
                  const BackendFactory& backends, const EvalConfig& eval_config,
                  const DemoDataset& testset);

Curve BaselineRun(const DemoDataset& base, BaselineKind kind, const std::vector<int>& counts,
                  const std::vector<std::uint64_t>& seeds, std::uint64_t master_seed,
                  const AssetLibrary& library, const EvalConfig& eval_config,
                  const DemoDataset& testset);

}  // namespace sceneaug

#endif  // SCENEAUG_EVALUATION_HPP_
