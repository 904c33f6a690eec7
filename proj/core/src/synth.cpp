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

#include "sceneaug/synth.hpp"

#include <algorithm>
#include <cmath>

#include "sceneaug/random.hpp"

namespace sceneaug {

namespace {

struct Layout {
  Pixel pick_center;
  int pick_half = 0;  // box spans [c - half, c + half]
  Pixel place_center;
  int place_radius = 0;
};

BoundingBox PickBox(const Layout& l) {
  return {l.pick_center.u - l.pick_half, l.pick_center.v - l.pick_half,
          l.pick_center.u + l.pick_half, l.pick_center.v + l.pick_half};
}

BoundingBox PlaceBox(const Layout& l) {
  return {l.place_center.u - l.place_radius, l.place_center.v - l.place_radius,
          l.place_center.u + l.place_radius, l.place_center.v + l.place_radius};
}

std::uint8_t Jitter(std::uint8_t base, std::uint64_t key, int amplitude) {
  if (amplitude <= 0) return base;
  const int delta = static_cast<int>(Mix64(key) % static_cast<std::uint64_t>(2 * amplitude + 1)) -
                    amplitude;
  return static_cast<std::uint8_t>(std::clamp(static_cast<int>(base) + delta, 0, 255));
}

}  // namespace

Demo SynthDemo(std::uint64_t seed, const SynthPalette& palette, const TopDownConfig& config) {
  config.validate();
  const int w = config.width();
  const int h = config.height();
  const double res = config.resolution;
  Rng rng(DeriveSeed(seed, {HashString("synth_demo")}));

  Layout layout;
  layout.pick_half = std::max(1, static_cast<int>(std::lround(rng.uniform(palette.pick_side_min, palette.pick_side_max) * res / 2.0)));
  layout.place_radius = std::max(1, static_cast<int>(std::lround(rng.uniform(palette.place_radius_min, palette.place_radius_max) * res)));
  const float pick_height =
      QuantizeHeight(static_cast<float>(rng.uniform(palette.pick_height_min, palette.pick_height_max)));
  const float place_height = QuantizeHeight(static_cast<float>(palette.place_height));
  const int gap = static_cast<int>(std::ceil(palette.clearance * res));

  auto fits = [&](Pixel c, int half) {
    return c.u - half >= 1 && c.v - half >= 1 && c.u + half <= w - 2 && c.v + half <= h - 2;
  };
  auto sample_center = [&](int half) {
    return Pixel{static_cast<int>(rng.uniform_int(1 + half, w - 2 - half)),
                 static_cast<int>(rng.uniform_int(1 + half, h - 2 - half))};
  };

  bool placed = false;
  for (int attempt = 0; attempt < 200 && !placed; ++attempt) {
    layout.pick_center = sample_center(layout.pick_half);
    layout.place_center = sample_center(layout.place_radius);
    placed = fits(layout.pick_center, layout.pick_half) &&
             fits(layout.place_center, layout.place_radius) &&
             !PickBox(layout).expanded(gap).intersects(PlaceBox(layout));
  }
  if (!placed) {
    // Deterministic fallback: shrink both objects and put them in opposite
    // halves of the workspace.
    layout.pick_half = std::max(1, std::min({layout.pick_half, w / 8, h / 4}));
    layout.place_radius = std::max(1, std::min({layout.place_radius, w / 8, h / 4}));
    layout.pick_center = {w / 4, h / 2};
    layout.place_center = {(3 * w) / 4, h / 2};
  }

  Demo demo;
  demo.id = "synth_" + std::to_string(seed);
  demo.task_text = palette.task_text;
  demo.obs = {MakeRgb(w, h), MakeHeightMap(w, h), config};
  demo.masks = MaskSet::Empty(w, h);
  const std::uint64_t color_key = DeriveSeed(seed, {HashString("synth_color")});

  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < w; ++u) {
      const int dpu = u - layout.pick_center.u;
      const int dpv = v - layout.pick_center.v;
      const int dqu = u - layout.place_center.u;
      const int dqv = v - layout.place_center.v;
      const bool in_pick = std::abs(dpu) <= layout.pick_half && std::abs(dpv) <= layout.pick_half;
      const bool in_place = dqu * dqu + dqv * dqv <= layout.place_radius * layout.place_radius;
      Rgb8 base = palette.table;
      if (in_pick) {
        base = palette.pick;
        demo.masks.pick_object.at(u, v) = 1;
        demo.obs.heightmap.at(u, v) = pick_height;
      } else if (in_place) {
        base = palette.place;
        demo.masks.place_target.at(u, v) = 1;
        demo.obs.heightmap.at(u, v) = place_height;
      }
      const std::uint64_t key = DeriveSeed(color_key, {static_cast<std::uint64_t>(v) * w + u});
      for (int c = 0; c < 3; ++c) {
        demo.obs.rgb.at(u, v, c) = Jitter(base[c], key + c, palette.noise_amplitude);
      }
    }
  }
  demo.action = PickPlaceAction{layout.pick_center, layout.place_center};
  return demo;
}

DemoDataset SynthDataset(std::uint64_t first_seed, int count, const SynthPalette& palette,
                         const TopDownConfig& config) {
  DemoDataset ds;
  for (int i = 0; i < count; ++i) {
    const std::uint64_t seed = first_seed + static_cast<std::uint64_t>(i);
    ds.demos.push_back(SynthDemo(seed, palette, config));
    ds.manifest.seeds.push_back(seed);
  }
  ds.sync_manifest();
  return ds;
}

}  // namespace sceneaug
