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

#include <algorithm>
#include <cstdio>
#include <numbers>

#include "sceneaug/benchmark.hpp"
#include "sceneaug/synth.hpp"

namespace sceneaug {

namespace {

std::vector<std::string> Without(const std::vector<std::string>& all,
                                 const std::vector<std::string>& drop) {
  std::vector<std::string> out;
  for (const auto& s : all) {
    if (std::find(drop.begin(), drop.end(), s) == drop.end()) out.push_back(s);
  }
  return out;
}

template <typename T>
const T& Choose(Rng& rng, const std::vector<T>& items) {
  return items[static_cast<std::size_t>(
      rng.uniform_int(0, static_cast<std::int64_t>(items.size()) - 1))];
}

}  // namespace

BenchmarkSuite MakeBenchmark(const BenchmarkConfig& config) {
  config.topdown.validate();
  if (config.train_demos < 1 || config.test_scenes < 0) {
    Fail(ErrorCode::kInvalidArgument, "benchmark needs at least one training demo");
  }
  using P = AssetLibrary::Pool;
  BenchmarkSuite suite;
  suite.heldout_colors = {"orange", "purple", "pink"};
  suite.heldout_materials = {"marble", "fabric"};
  suite.heldout_pick = {"can", "cone", "bottle"};
  suite.heldout_place = {"bowl", "basket", "lid"};
  suite.heldout_distractors = {"pyramid", "brick", "mug"};

  const AssetLibrary full = StandardAssetLibrary(config.seed);
  std::vector<std::string> colors, materials;
  for (const auto& c : ColorVocabulary()) colors.emplace_back(c.name);
  for (const auto& m : MaterialVocabulary()) materials.emplace_back(m);
  const auto train_colors = Without(colors, suite.heldout_colors);
  const auto train_materials = Without(materials, suite.heldout_materials);

  AssetLibrary meshes_only;
  for (P p : {P::kPick, P::kPlace, P::kDistractor}) {
    for (const auto& id : full.pool(p)) meshes_only.add_mesh(p, id, full.mesh(id), full.category(id));
  }
  suite.train_library = meshes_only.Subset(Without(full.pool(P::kPick), suite.heldout_pick),
                                           Without(full.pool(P::kPlace), suite.heldout_place),
                                           Without(full.pool(P::kDistractor), suite.heldout_distractors));
  AddProceduralCorpora(suite.train_library, config.seed, train_colors, train_materials, 12, 8,
                       config.topdown.width(), config.topdown.height());
  suite.train_vocab = PromptVocab::Default(suite.train_library);
  suite.train_vocab.colors = train_colors;
  suite.train_vocab.materials = train_materials;

  suite.augment.collision_margin_px = 1;
  suite.augment.master_seed = DeriveSeed(config.seed, {HashString("augment")});
  suite.eval.crop_size = 9;
  suite.eval.success_radius_px = 2;

  suite.train = SynthDataset(DeriveSeed(config.seed, {HashString("train")}), config.train_demos,
                             SynthPalette{}, config.topdown);

  ProceduralBackend backend;
  AugmentConfig scene_config = suite.augment;
  const Condition conditions[] = {Condition::kUnseenEnv, Condition::kUnseenPick,
                                  Condition::kUnseenPlace};
  auto prompt = [&](Rng& rng, const std::string& noun) {
    return "a " + Choose(rng, suite.heldout_colors) + " " + Choose(rng, suite.heldout_materials) +
           " " + noun;
  };
  for (int i = 0; i < config.test_scenes; ++i) {
    const Condition condition = conditions[i % 3];
    for (std::uint64_t attempt = 0;; ++attempt) {
      const std::uint64_t seed =
          DeriveSeed(config.seed, {HashString("test"), static_cast<std::uint64_t>(i), attempt});
      Rng rng(seed);
      Demo scene = SynthDemo(rng.next(), SynthPalette{}, config.topdown);
      AugmentPlan plan;
      if (condition == Condition::kUnseenEnv) {
        const auto n = rng.uniform_int(1, 3);
        for (std::int64_t k = 0; k < n; ++k) {
          DistractorOp op;
          op.mesh_id = Choose(rng, suite.heldout_distractors);
          op.prompt = prompt(rng, full.category(op.mesh_id));
          op.seed = rng.next();
          op.placement_seed = rng.next();
          op.extent_m =
              rng.uniform(scene_config.distractor_extent_lo, scene_config.distractor_extent_hi);
          plan.ops.push_back(op);
        }
        plan.ops.push_back(BackgroundOp{prompt(rng, "table"), rng.next()});
      } else {
        CrossCategoryOp op;
        op.role = condition == Condition::kUnseenPick ? Role::kPick : Role::kPlace;
        op.mesh_id = Choose(rng, op.role == Role::kPick ? suite.heldout_pick : suite.heldout_place);
        op.prompt = prompt(rng, full.category(op.mesh_id));
        op.seed = rng.next();
        op.yaw = rng.uniform(-std::numbers::pi, std::numbers::pi);
        op.scale_jitter = rng.uniform(scene_config.scale_jitter_lo, scene_config.scale_jitter_hi);
        plan.ops.push_back(op);
      }
      try {
        scene = ApplyPlan(scene, plan, full, scene_config, backend);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::kReplacementInvalid) continue;
        throw;
      }
      if (!ValidateDemo(scene).empty()) continue;
      char id[32];
      std::snprintf(id, sizeof(id), "test_%03d", i);
      scene.id = id;
      scene.condition = condition;
      scene.provenance = {};
      suite.test.demos.push_back(std::move(scene));
      suite.test.manifest.seeds.push_back(seed);
      break;
    }
  }
  suite.test.sync_manifest();
  return suite;
}

}  // namespace sceneaug
