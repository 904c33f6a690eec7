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

#ifndef SCENEAUG_AUGMENT_HPP_
#define SCENEAUG_AUGMENT_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sceneaug/assets.hpp"
#include "sceneaug/genbackend.hpp"
#include "sceneaug/random.hpp"
#include "sceneaug/scene.hpp"

namespace sceneaug {

struct PromptVocab {
  std::vector<std::string> colors;
  std::vector<std::string> materials;
  std::map<std::string, std::string> category_names;  // mesh id -> noun phrase
  // Nouns for retexturing objects whose mesh is unknown (captured scenes).
  std::string pick_noun = "object";
  std::string place_noun = "receptacle";
  std::string background_noun = "table";

  /// Colors and materials from the procedural backend vocabulary, nouns from `library`.
  static PromptVocab Default(const AssetLibrary& library);

  void validate() const;
  std::string category(const std::string& mesh_id) const;
};

enum class OpKind { kCrossPick, kCrossPlace, kInPick, kInPlace, kDistractors, kBackground };
inline constexpr int kOpKindCount = 6;

std::string_view ToString(OpKind kind);
OpKind OpKindFromString(std::string_view s);

struct AugmentConfig {
  int count = 100;
  // Indexed by OpKind.
  std::array<double, kOpKindCount> op_probs{0.3, 0.3, 0.5, 0.5, 0.7, 0.7};
  int distractor_min = 1;
  int distractor_max = 3;
  double scale_jitter_lo = 0.8;
  double scale_jitter_hi = 1.2;
  double distractor_extent_lo = 0.03;  // footprint side, m
  double distractor_extent_hi = 0.08;
  int collision_margin_px = 4;
  int max_placement_retries = 20;
  std::uint64_t master_seed = 0;
  int max_plan_attempts = 64;  // resamples per (demo, aug_index) before giving up
  int workers = 0;             // 0 = hardware concurrency

  double op_prob(OpKind k) const { return op_probs[static_cast<int>(k)]; }
  void validate() const;
  bool operator==(const AugmentConfig&) const = default;
};

struct InCategoryOp {
  Role role = Role::kPick;
  std::string prompt;
  std::uint64_t seed = 0;
};

struct CrossCategoryOp {
  Role role = Role::kPick;
  std::string mesh_id;
  std::string prompt;
  std::uint64_t seed = 0;
  double yaw = 0.0;
  double scale_jitter = 1.0;
};

struct DistractorOp {
  std::string mesh_id;
  std::string prompt;
  std::uint64_t seed = 0;
  std::uint64_t placement_seed = 0;
  double extent_m = 0.05;
};

struct BackgroundOp {
  std::string prompt;
  std::uint64_t seed = 0;
};

using AugmentOp = std::variant<CrossCategoryOp, InCategoryOp, DistractorOp, BackgroundOp>;

struct AugmentPlan {
  std::vector<AugmentOp> ops;  // application order

  std::string to_json() const;
  std::string digest() const;  // SHA-256 of to_json()
};

/// Includes each kind independently with its probability and resamples empty plans.
/// Kinds whose asset pool is empty are never selected; throws InvalidArgument when
/// that leaves nothing selectable.
AugmentPlan SamplePlan(Rng& rng, const AugmentConfig& config, const AssetLibrary& library,
                       const PromptVocab& vocab);

// ---- operators -------------------------------------------------------------

Demo AugInCategory(const Demo& demo, Role role, const std::string& prompt, std::uint64_t seed,
                   GenerationBackend& backend);

/// Throws ReplacementInvalid when the action pixel cannot be kept inside the new mask.
Demo AugCrossCategory(const Demo& demo, const CrossCategoryOp& op, const AssetLibrary& library,
                      const AugmentConfig& config, GenerationBackend& backend);

/// Throws PlacementExhausted after config.max_placement_retries rejected placements.
Demo AugAddDistractor(const Demo& demo, const DistractorOp& op, const AssetLibrary& library,
                      const AugmentConfig& config, GenerationBackend& backend);

Demo AugBackground(const Demo& demo, const std::string& prompt, std::uint64_t seed,
                   GenerationBackend& backend);

/// Applies every op in order. A distractor that cannot be placed is skipped; any other
/// failure propagates. Provenance records the parent id and plan digest.
Demo ApplyPlan(const Demo& demo, const AugmentPlan& plan, const AssetLibrary& library,
               const AugmentConfig& config, GenerationBackend& backend);

/// Uses `background` (nearest-pixel color) to fill every cell of `region`.
void FillFromNearest(RgbImage& rgb, const Bitmap& background, const Bitmap& region);

// ---- baselines -------------------------------------------------------------

enum class BaselineKind { kCopyPaste, kRandomBackground, kRandomDistractors, kSpatial };

std::string_view ToString(BaselineKind kind);
BaselineKind BaselineKindFromString(std::string_view s);

/// Pastes one cutout at a random anchor (anywhere, or over the pick or place object).
/// Masks lose the covered pixels; heights are untouched.
Demo BaselineCopyPaste(const Demo& demo, const RgbaImage& cutout, Rng& rng);

/// Nearest-neighbor resizes `image` and pastes it outside every object mask.
Demo BaselineRandomBackground(const Demo& demo, const RgbImage& image);

/// Pastes 1..3 cutouts at uniform positions with no collision checks.
Demo BaselineRandomDistractors(const Demo& demo, const std::vector<RgbaImage>& cutouts, Rng& rng);

/// Rotation about the image center followed by translation, nearest-neighbor sampled.
/// The action moves with the content. Falls back to the identity when no sampled
/// transform keeps both action pixels on their objects.
Demo BaselineSpatial(const Demo& demo, Rng& rng);

/// Maps every cell through the inverse transform; `angle` in radians, shift in cells.
Demo ApplyRigidTransform(const Demo& demo, double angle, double shift_u, double shift_v);

// ---- batch expansion ---------------------------------------------------------

struct AugmentCheckpoint {
  std::vector<Demo> completed;  // augmented demos finished so far, in output order
  std::size_t next_task = 0;    // index into the (demo, aug_index) task list
};

/// Raised when a backend fails mid-run; carries everything needed to resume.
class AugmentInterrupted : public Error {
 public:
  AugmentInterrupted(const Error& cause, AugmentCheckpoint checkpoint);
  const AugmentCheckpoint& checkpoint() const { return checkpoint_; }
  ErrorCode cause() const { return cause_; }

 private:
  AugmentCheckpoint checkpoint_;
  ErrorCode cause_;
};

/// Derived seed for attempt `attempt` of augmentation `aug_index` of `demo_id`.
std::uint64_t AugmentSeed(std::uint64_t master_seed, const std::string& demo_id, int aug_index,
                          int attempt);

std::string AugmentedId(const std::string& parent_id, int aug_index);

/// Backend factory so each worker owns an instance.
using BackendFactory = std::function<std::unique_ptr<GenerationBackend>()>;

/// Output: each original followed by its config.count augmentations.
DemoDataset AugmentDataset(const DemoDataset& dataset, const AugmentConfig& config,
                           const AssetLibrary& library, const PromptVocab& vocab,
                           const BackendFactory& backends,
                           const std::optional<AugmentCheckpoint>& resume = std::nullopt);

/// Same layout as AugmentDataset with a baseline augmenter in place of sampled plans.
DemoDataset AugmentDatasetBaseline(const DemoDataset& dataset, BaselineKind kind, int count,
                                   std::uint64_t master_seed, const AssetLibrary& library);

}  // namespace sceneaug

#endif  // SCENEAUG_AUGMENT_HPP_
