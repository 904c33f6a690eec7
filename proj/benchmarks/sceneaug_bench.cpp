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


#include <benchmark/benchmark.h>

#include "sceneaug/affordance.hpp"
#include "sceneaug/augment.hpp"
#include "sceneaug/genbackend.hpp"
#include "sceneaug/geometry.hpp"
#include "sceneaug/mesh.hpp"
#include "sceneaug/rasterizer.hpp"
#include "sceneaug/synth.hpp"

namespace {

using namespace sceneaug;

void BM_ProceduralGenerate(benchmark::State& state) {
  const Demo d = SynthDemo(0);
  ProceduralBackend backend;
  GenRequest req{d.obs.rgb, d.obs.heightmap, d.masks.place_target, "a green wooden plate"};
  std::uint64_t seed = 0;
  for (auto _ : state) {
    req.seed = seed++;
    benchmark::DoNotOptimize(Generate(backend, req));
  }
}
BENCHMARK(BM_ProceduralGenerate);

void BM_Rasterize(benchmark::State& state) {
  const TriMesh mesh = MakeCylinder(0.5, 0.8, static_cast<int>(state.range(0)));
  const TopDownConfig c;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Rasterize(mesh, {0.3, 0.15, 0.4, 0.06}, c));
  }
}
BENCHMARK(BM_Rasterize)->Arg(16)->Arg(64)->Arg(256);

void BM_BuildTopDown(benchmark::State& state) {
  Eigen::Matrix3d r;
  r << 1, 0, 0, 0, -1, 0, 0, 0, -1;
  RgbdFrame frame{MakeRgb(640, 480), Image<float>(640, 480, 1),
                  CameraIntrinsics::Make(500, 500, 319.5, 239.5, 640, 480),
                  CameraPose::Make(r, Eigen::Vector3d(0.32, 0.16, 0.8))};
  for (auto& z : frame.depth.data()) z = 0.8f;
  const TopDownConfig c;
  for (auto _ : state) benchmark::DoNotOptimize(BuildTopDown(frame, c));
}
BENCHMARK(BM_BuildTopDown);

void BM_Predict(benchmark::State& state) {
  const DemoDataset train = SynthDataset(0, static_cast<int>(state.range(0)));
  EvalConfig config;
  const AffordanceModel model = Fit(train, config);
  const Demo scene = SynthDemo(1000);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        Predict(model, scene.obs, scene.task_text, config.exclusion_radius()));
  }
}
BENCHMARK(BM_Predict)->Arg(1)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_AugmentScene(benchmark::State& state) {
  const AssetLibrary lib = StandardAssetLibrary(0);
  const PromptVocab vocab = PromptVocab::Default(lib);
  AugmentConfig config;
  ProceduralBackend backend;
  const Demo d = SynthDemo(0);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    Rng rng(seed++);
    const AugmentPlan plan = SamplePlan(rng, config, lib, vocab);
    try {
      benchmark::DoNotOptimize(ApplyPlan(d, plan, lib, config, backend));
    } catch (const Error&) {
      // Rejected cross-category fits still cost time; keep them in the average.
    }
  }
}
BENCHMARK(BM_AugmentScene)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
