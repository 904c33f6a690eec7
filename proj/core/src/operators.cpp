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
#include <cmath>
#include <numbers>

#include "sceneaug/augment.hpp"
#include "sceneaug/rasterizer.hpp"

namespace sceneaug {

namespace {

GenRequest MakeRequest(const Demo& demo, Bitmap region, const std::string& prompt,
                       std::uint64_t seed) {
  GenRequest req;
  req.rgb = demo.obs.rgb;
  req.height = demo.obs.heightmap;
  req.region_mask = std::move(region);
  req.prompt = prompt;
  req.seed = seed;
  req.cell_size_m = demo.obs.config.cell_size();
  return req;
}

// Object cells keep at least 1 mm so they stay visible in the height channel.
float ObjectHeight(float h) { return std::max(QuantizeHeight(h), MillimetersToHeight(1)); }

Role Other(Role r) { return r == Role::kPick ? Role::kPlace : Role::kPick; }

}  // namespace

void FillFromNearest(RgbImage& rgb, const Bitmap& background, const Bitmap& region) {
  const auto nearest = NearestFilledIndex(background);
  if (!nearest) Fail(ErrorCode::kInvalidArgument, "no background pixel to fill from");
  const int w = rgb.width();
  for (int v = 0; v < rgb.height(); ++v) {
    for (int u = 0; u < w; ++u) {
      if (!region.at(u, v)) continue;
      const std::size_t src = (*nearest)[static_cast<std::size_t>(v) * w + u];
      const int su = static_cast<int>(src % w), sv = static_cast<int>(src / w);
      for (int c = 0; c < 3; ++c) rgb.at(u, v, c) = rgb.at(su, sv, c);
    }
  }
}

Demo AugInCategory(const Demo& demo, Role role, const std::string& prompt, std::uint64_t seed,
                   GenerationBackend& backend) {
  const Bitmap& mask = demo.masks.role(role);
  if (!AnySet(mask)) {
    Fail(ErrorCode::kInvalidArgument, std::string(ToString(role)) + " mask is empty");
  }
  Demo out = demo;
  out.obs.rgb = Generate(backend, MakeRequest(demo, mask, prompt, seed)).rgb;
  return out;
}

Demo AugBackground(const Demo& demo, const std::string& prompt, std::uint64_t seed,
                   GenerationBackend& backend) {
  Bitmap region = demo.masks.background();
  if (!AnySet(region)) return demo;
  Demo out = demo;
  out.obs.rgb = Generate(backend, MakeRequest(demo, std::move(region), prompt, seed)).rgb;
  return out;
}

Demo AugCrossCategory(const Demo& demo, const CrossCategoryOp& op, const AssetLibrary& library,
                      const AugmentConfig& config, GenerationBackend& backend) {
  const Bitmap& old_mask = demo.masks.role(op.role);
  if (!AnySet(old_mask)) {
    Fail(ErrorCode::kInvalidArgument, std::string(ToString(op.role)) + " mask is empty");
  }
  const TriMesh& mesh = library.mesh(op.mesh_id);
  const TopDownConfig& cfg = demo.obs.config;
  const Bitmap& other = demo.masks.role(Other(op.role));
  std::optional<Pixel> anchor;
  if (demo.action) anchor = op.role == Role::kPick ? demo.action->pick : demo.action->place;

  const Centroid c = MaskCentroid(old_mask);
  const BoundingBox box = MaskBounds(old_mask);
  const double cell = cfg.cell_size();
  Placement placement;
  placement.x = cfg.x_min + (c.u + 0.5) * cell;
  placement.y = cfg.y_min + (c.v + 0.5) * cell;
  placement.yaw = op.yaw;
  placement.scale = FitScaleToFootprint(mesh, (box.u_max - box.u_min + 1) * cell,
                                        (box.v_max - box.v_min + 1) * cell) *
                    op.scale_jitter;

  std::optional<RenderPatch> accepted;
  for (int attempt = 0; attempt <= config.max_placement_retries && !accepted; ++attempt) {
    RenderPatch patch;
    try {
      patch = Rasterize(mesh, placement, cfg);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerateMesh) throw;
      placement.scale *= 1.25;
      continue;
    }
    const bool overlaps = Intersects(patch.mask, other);
    const bool holds = !anchor || patch.mask.at(*anchor);
    if (holds && !overlaps) {
      accepted = std::move(patch);
    } else {
      placement.scale *= overlaps ? 0.8 : 1.25;
    }
  }
  if (!accepted) {
    Fail(ErrorCode::kReplacementInvalid,
         "mesh '" + op.mesh_id + "' cannot replace the " + std::string(ToString(op.role)) +
             " object without losing the action pixel");
  }

  Demo out = demo;
  const Bitmap background = demo.masks.background();
  if (!AnySet(background)) {
    Fail(ErrorCode::kReplacementInvalid, "scene has no background to erase into");
  }
  FillFromNearest(out.obs.rgb, background, old_mask);
  auto& heights = out.obs.heightmap;
  for (int v = 0; v < heights.height(); ++v) {
    for (int u = 0; u < heights.width(); ++u) {
      if (accepted->mask.at(u, v)) {
        heights.at(u, v) = ObjectHeight(accepted->height.at(u, v));
      } else if (old_mask.at(u, v)) {
        heights.at(u, v) = 0.0f;
      }
    }
  }
  out.masks.role(op.role) = accepted->mask;
  std::vector<Bitmap> kept;
  for (Bitmap d : out.masks.distractors) {
    for (std::size_t i = 0; i < d.data().size(); ++i) {
      if (accepted->mask.data()[i]) d.data()[i] = 0;
    }
    if (AnySet(d)) kept.push_back(std::move(d));
  }
  out.masks.distractors = std::move(kept);
  out.obs.rgb = Generate(backend, MakeRequest(out, accepted->mask, op.prompt, op.seed)).rgb;
  return out;
}

Demo AugAddDistractor(const Demo& demo, const DistractorOp& op, const AssetLibrary& library,
                      const AugmentConfig& config, GenerationBackend& backend) {
  const TriMesh& mesh = library.mesh(op.mesh_id);
  const TopDownConfig& cfg = demo.obs.config;
  std::vector<BoundingBox> occupied{MaskBounds(demo.masks.pick_object),
                                    MaskBounds(demo.masks.place_target)};
  for (const auto& d : demo.masks.distractors) occupied.push_back(MaskBounds(d));

  Rng rng(op.placement_seed);
  const double scale = FitScaleToFootprint(mesh, op.extent_m, op.extent_m);
  std::optional<RenderPatch> accepted;
  for (int attempt = 0; attempt < config.max_placement_retries && !accepted; ++attempt) {
    Placement placement;
    placement.x = rng.uniform(cfg.x_min, cfg.x_max);
    placement.y = rng.uniform(cfg.y_min, cfg.y_max);
    placement.yaw = rng.uniform(-std::numbers::pi, std::numbers::pi);
    placement.scale = scale;
    RenderPatch patch;
    try {
      patch = Rasterize(mesh, placement, cfg);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDegenerateMesh) throw;
      continue;
    }
    const BoundingBox box = MaskBounds(patch.mask).expanded(config.collision_margin_px);
    const bool collides = std::any_of(occupied.begin(), occupied.end(),
                                      [&](const BoundingBox& b) { return box.intersects(b); });
    if (!collides) accepted = std::move(patch);
  }
  if (!accepted) {
    Fail(ErrorCode::kPlacementExhausted,
         "no collision-free placement for distractor '" + op.mesh_id + "'");
  }

  Demo out = demo;
  auto& heights = out.obs.heightmap;
  for (int v = 0; v < heights.height(); ++v) {
    for (int u = 0; u < heights.width(); ++u) {
      if (accepted->mask.at(u, v)) {
        heights.at(u, v) = std::max(heights.at(u, v), ObjectHeight(accepted->height.at(u, v)));
      }
    }
  }
  out.masks.distractors.push_back(accepted->mask);
  out.obs.rgb = Generate(backend, MakeRequest(out, accepted->mask, op.prompt, op.seed)).rgb;
  return out;
}

}  // namespace sceneaug
