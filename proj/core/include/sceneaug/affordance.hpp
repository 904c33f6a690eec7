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

#ifndef SCENEAUG_AFFORDANCE_HPP_
#define SCENEAUG_AFFORDANCE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "sceneaug/scene.hpp"

namespace sceneaug {

struct EvalConfig {
  int success_radius_px = 6;
  int crop_size = 21;  // odd, >= 9
  // Place scores within this distance of the predicted pick are suppressed.
  // Defaults to crop_size / 2.
  std::optional<int> exclusion_radius_px;

  int exclusion_radius() const { return exclusion_radius_px.value_or(crop_size / 2); }
  void validate() const;
  bool operator==(const EvalConfig&) const = default;
};

/// Channels of the matching feature: r, g, b in [0, 1] and height in centimeters.
inline constexpr int kFeatureChannels = 4;
inline constexpr float kHeightFeatureScale = 100.0f;

struct AffordanceEntry {
  std::string task_text;
  // crop_size x crop_size x kFeatureChannels, channel-planar. Each channel has
  // zero mean and the whole crop unit norm (all zeros for a constant crop).
  std::vector<float> pick_crop;
  std::vector<float> place_crop;

  bool operator==(const AffordanceEntry&) const = default;
};

struct AffordanceModel {
  int crop_size = 21;
  std::vector<AffordanceEntry> entries;

  bool operator==(const AffordanceModel&) const = default;
};

struct Prediction {
  Pixel pick;
  Pixel place;
  ScoreMap pick_scores;
  ScoreMap place_scores;
};

/// Planar feature image (kFeatureChannels planes of width x height).
std::vector<float> ObservationFeatures(const TopDownObservation& obs);

/// Normalized crop centered on `center`, edge-replicated beyond the border.
std::vector<float> NormalizedCrop(const TopDownObservation& obs, Pixel center, int crop_size);

/// One entry per demo, in dataset order. Throws EmptyDataset for no demos and
/// InvalidArgument for demos without an action.
AffordanceModel Fit(const DemoDataset& dataset, const EvalConfig& config);

/// Normalized cross-correlation of one crop at every pixel (score 0 where the
/// observation window is constant).
Image<float> CorrelationMap(const TopDownObservation& obs, const std::vector<float>& crop,
                            int crop_size);

/// Throws UnknownTask when no entry carries `task_text`.
Prediction Predict(const AffordanceModel& model, const TopDownObservation& obs,
                   const std::string& task_text, int exclusion_radius_px);

}  // namespace sceneaug

#endif  // SCENEAUG_AFFORDANCE_HPP_
