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

#ifndef SCENEAUG_SYNTH_HPP_
#define SCENEAUG_SYNTH_HPP_

#include <array>
#include <cstdint>
#include <string>

#include "sceneaug/scene.hpp"

namespace sceneaug {

using Rgb8 = std::array<std::uint8_t, 3>;

/// Appearance and size ranges for synthetic tabletop demos.
struct SynthPalette {
  Rgb8 table{150, 148, 140};
  Rgb8 pick{200, 40, 35};
  Rgb8 place{40, 70, 190};
  std::string task_text = "put the red box on the blue coaster";
  double pick_side_min = 0.04;  // box footprint side, m
  double pick_side_max = 0.07;
  double pick_height_min = 0.03;
  double pick_height_max = 0.08;
  double place_radius_min = 0.035;  // flat disc, m
  double place_radius_max = 0.06;
  double place_height = 0.008;
  double clearance = 0.02;  // minimum gap between the two footprints, m
  int noise_amplitude = 6;  // +- per-pixel color jitter
};

/// Deterministic in (seed, palette, config): one box-shaped pick object and
/// one flat disc target at non-overlapping positions, exact masks, and the
/// action at the two mask centroids (odd-sized symmetric footprints keep the
/// centroids on integer pixels).
Demo SynthDemo(std::uint64_t seed, const SynthPalette& palette = {},
               const TopDownConfig& config = {});

DemoDataset SynthDataset(std::uint64_t first_seed, int count, const SynthPalette& palette = {},
                         const TopDownConfig& config = {});

}  // namespace sceneaug

#endif  // SCENEAUG_SYNTH_HPP_
