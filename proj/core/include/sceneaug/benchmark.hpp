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

#ifndef SCENEAUG_BENCHMARK_HPP_
#define SCENEAUG_BENCHMARK_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "sceneaug/affordance.hpp"
#include "sceneaug/assets.hpp"
#include "sceneaug/augment.hpp"
#include "sceneaug/scene.hpp"

namespace sceneaug {

/// Synthetic pick-and-place benchmark: a few training demos and a test set whose
/// scenes use meshes, colors and materials that augmentation never sees.
struct BenchmarkConfig {
  std::uint64_t seed = 0;
  int train_demos = 10;
  int test_scenes = 100;  // split evenly over the three conditions
  TopDownConfig topdown{0.0, 0.64, 0.0, 0.32, 100.0, 0.0};
};

struct BenchmarkSuite {
  DemoDataset train;
  DemoDataset test;
  AssetLibrary train_library;  // held-out meshes removed; baseline corpora from train vocab
  PromptVocab train_vocab;
  AugmentConfig augment;
  EvalConfig eval;

  // Held-out vocabulary used only by the test set.
  std::vector<std::string> heldout_colors, heldout_materials;
  std::vector<std::string> heldout_pick, heldout_place, heldout_distractors;
};

BenchmarkSuite MakeBenchmark(const BenchmarkConfig& config = {});

}  // namespace sceneaug

#endif  // SCENEAUG_BENCHMARK_HPP_
