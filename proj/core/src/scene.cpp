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

#include "sceneaug/scene.hpp"

#include <cmath>
#include <limits>
#include <set>

namespace sceneaug {

std::string_view ToString(Role role) { return role == Role::kPick ? "pick" : "place"; }

std::string_view ToString(Condition c) {
  switch (c) {
    case Condition::kNone: return "";
    case Condition::kUnseenEnv: return "unseen_env";
    case Condition::kUnseenPick: return "unseen_pick";
    case Condition::kUnseenPlace: return "unseen_place";
  }
  return "";
}

Condition ConditionFromString(std::string_view s) {
  if (s.empty()) return Condition::kNone;
  if (s == "unseen_env") return Condition::kUnseenEnv;
  if (s == "unseen_pick") return Condition::kUnseenPick;
  if (s == "unseen_place") return Condition::kUnseenPlace;
  Fail(ErrorCode::kFormatError, "unknown condition '" + std::string(s) + "'");
}

MaskSet MaskSet::Empty(int width, int height) {
  return {MakeBitmap(width, height), MakeBitmap(width, height), {}};
}

Bitmap MaskSet::objects_union() const {
  Bitmap out = Union(pick_object, place_target);
  for (const auto& d : distractors) out = Union(out, d);
  return out;
}

Bitmap MaskSet::background() const { return Complement(objects_union()); }

void DemoDataset::sync_manifest() {
  manifest.ids.clear();
  std::set<std::string> tasks;
  for (const auto& d : demos) {
    manifest.ids.push_back(d.id);
    tasks.insert(d.task_text);
  }
  manifest.task_names.assign(tasks.begin(), tasks.end());
}

Pixel ScoreMap::argmax() const {
  Pixel best{0, 0};
  float best_value = -std::numeric_limits<float>::infinity();
  for (int v = 0; v < values.height(); ++v) {
    for (int u = 0; u < values.width(); ++u) {
      const float s = values.at(u, v);
      if (s > best_value) {
        best_value = s;
        best = {u, v};
      }
    }
  }
  return best;
}

std::vector<std::string> ValidateDemo(const Demo& demo) {
  std::vector<std::string> violations;
  const int w = demo.obs.rgb.width();
  const int h = demo.obs.rgb.height();
  const auto& m = demo.masks;

  if (demo.task_text.empty()) violations.emplace_back("task_text empty");
  if (demo.obs.rgb.channels() != 3 || !demo.obs.heightmap.same_extent(demo.obs.rgb)) {
    violations.emplace_back("observation rgb/heightmap dims mismatch");
  }
  if (w != demo.obs.config.width() || h != demo.obs.config.height()) {
    violations.emplace_back("observation dims inconsistent with config");
  }
  for (float z : demo.obs.heightmap.data()) {
    if (!(z >= 0.0f) || !std::isfinite(z)) {
      violations.emplace_back("heightmap has negative or non-finite values");
      break;
    }
  }

  auto dims_ok = [&](const Bitmap& b) { return b.width() == w && b.height() == h && b.channels() == 1; };
  bool masks_ok = dims_ok(m.pick_object) && dims_ok(m.place_target);
  for (const auto& d : m.distractors) masks_ok = masks_ok && dims_ok(d);
  if (!masks_ok) {
    violations.emplace_back("mask dims differ from observation");
    return violations;
  }

  if (!AnySet(m.pick_object)) violations.emplace_back("pick_object mask empty");
  if (!AnySet(m.place_target)) violations.emplace_back("place_target mask empty");
  if (Intersects(m.pick_object, m.place_target)) violations.emplace_back("masks intersect");

  if (!demo.action) {
    violations.emplace_back("action missing");
    return violations;
  }
  const auto& a = *demo.action;
  if (!m.pick_object.contains(a.pick)) {
    violations.emplace_back("pick_px out of bounds");
  } else if (!m.pick_object.at(a.pick)) {
    violations.emplace_back("pick_px outside pick_object");
  }
  if (!m.place_target.contains(a.place)) {
    violations.emplace_back("place_px out of bounds");
  } else if (!m.place_target.at(a.place)) {
    violations.emplace_back("place_px outside place_target");
  }
  return violations;
}

Bitmap MaskFromHeights(const HeightMap& heights) {
  Bitmap mask = MakeBitmap(heights.width(), heights.height());
  for (std::size_t i = 0; i < heights.pixel_count(); ++i) {
    mask.data()[i] = heights.data()[i] > 1e-6f ? 1 : 0;
  }
  return mask;
}

}  // namespace sceneaug
