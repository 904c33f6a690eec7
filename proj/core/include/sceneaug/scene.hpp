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

#ifndef SCENEAUG_SCENE_HPP_
#define SCENEAUG_SCENE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sceneaug/geometry.hpp"
#include "sceneaug/image.hpp"

namespace sceneaug {

enum class Role { kPick, kPlace };

std::string_view ToString(Role role);

/// Per-role object bitmaps over the observation grid. The background is the
/// complement of the union of every mask.
struct MaskSet {
  Bitmap pick_object;
  Bitmap place_target;
  std::vector<Bitmap> distractors;

  const Bitmap& role(Role r) const { return r == Role::kPick ? pick_object : place_target; }
  Bitmap& role(Role r) { return r == Role::kPick ? pick_object : place_target; }

  Bitmap objects_union() const;
  Bitmap background() const;

  static MaskSet Empty(int width, int height);
  bool operator==(const MaskSet&) const = default;
};

struct PickPlaceAction {
  Pixel pick;
  Pixel place;
  bool operator==(const PickPlaceAction&) const = default;
};

struct Provenance {
  enum class Kind { kOriginal, kAugmented };
  Kind kind = Kind::kOriginal;
  std::string parent_id;
  std::string plan_digest;
  bool operator==(const Provenance&) const = default;
};

/// Held-out evaluation condition carried by test-set demos.
enum class Condition { kNone, kUnseenEnv, kUnseenPick, kUnseenPlace };

std::string_view ToString(Condition c);
Condition ConditionFromString(std::string_view s);

struct Demo {
  std::string id;
  TopDownObservation obs;
  MaskSet masks;
  std::optional<PickPlaceAction> action;  // absent until annotated
  std::string task_text;
  Provenance provenance;
  Condition condition = Condition::kNone;

  bool operator==(const Demo&) const = default;
};

struct Manifest {
  static constexpr int kFormatVersion = 1;
  int format_version = kFormatVersion;
  std::vector<std::string> ids;
  std::vector<std::string> task_names;
  std::vector<std::uint64_t> seeds;
  std::string config_digest;
  bool operator==(const Manifest&) const = default;
};

struct DemoDataset {
  std::vector<Demo> demos;
  Manifest manifest;

  /// Rebuilds manifest ids and task names from `demos`.
  void sync_manifest();
  bool operator==(const DemoDataset&) const = default;
};

/// Unnormalized per-pixel affordance scores.
struct ScoreMap {
  Image<float> values;

  /// Highest score; ties resolve to the lowest row-major index.
  Pixel argmax() const;
};

/// Returns one message per violated invariant; empty means valid.
std::vector<std::string> ValidateDemo(const Demo& demo);

/// Sets every pixel of `mask` at height-map cells > 1e-6.
Bitmap MaskFromHeights(const HeightMap& heights);

}  // namespace sceneaug

#endif  // SCENEAUG_SCENE_HPP_
