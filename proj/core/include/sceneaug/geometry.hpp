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

#ifndef SCENEAUG_GEOMETRY_HPP_
#define SCENEAUG_GEOMETRY_HPP_

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "sceneaug/image.hpp"

namespace sceneaug {

/// Pinhole intrinsics. Construct through `Make`, which validates.
class CameraIntrinsics {
 public:
  static CameraIntrinsics Make(double fx, double fy, double cx, double cy, int width,
                               int height);

  double fx() const noexcept { return fx_; }
  double fy() const noexcept { return fy_; }
  double cx() const noexcept { return cx_; }
  double cy() const noexcept { return cy_; }
  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

 private:
  CameraIntrinsics() = default;
  double fx_ = 1.0, fy_ = 1.0, cx_ = 0.0, cy_ = 0.0;
  int width_ = 1, height_ = 1;
};

/// Rigid transform world <- camera. The rotation must be orthonormal with
/// determinant +1 (within 1e-6); otherwise `Make` throws InvalidArgument.
class CameraPose {
 public:
  static CameraPose Make(const Eigen::Matrix3d& rotation, const Eigen::Vector3d& translation);
  static CameraPose Identity();

  const Eigen::Matrix3d& rotation() const noexcept { return rotation_; }
  const Eigen::Vector3d& translation() const noexcept { return translation_; }
  Eigen::Vector3d apply(const Eigen::Vector3d& p) const { return rotation_ * p + translation_; }

 private:
  CameraPose() = default;
  Eigen::Matrix3d rotation_ = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation_ = Eigen::Vector3d::Zero();
};

inline constexpr float kMaxValidDepth = 10.0f;

struct RgbdFrame {
  RgbImage rgb;
  Image<float> depth;  // meters, 0 = invalid
  CameraIntrinsics intrinsics;
  CameraPose pose;

  /// Throws InvalidArgument when rgb/depth/intrinsics disagree on size.
  void validate() const;
};

/// Table-plane workspace and raster resolution of the top-down view.
struct TopDownConfig {
  double x_min = 0.0;
  double x_max = 0.64;
  double y_min = 0.0;
  double y_max = 0.32;
  double resolution = 500.0;  // pixels per meter
  double table_height = 0.0;

  void validate() const;
  int width() const;
  int height() const;
  double cell_size() const { return 1.0 / resolution; }
  bool operator==(const TopDownConfig&) const = default;
};

struct TopDownObservation {
  RgbImage rgb;
  HeightMap heightmap;  // meters above the table, >= 0, on the 1 mm grid
  TopDownConfig config;

  int width() const { return rgb.width(); }
  int height() const { return rgb.height(); }
  bool operator==(const TopDownObservation&) const = default;
};

/// Rounds a height to the 1 mm grid used by stored observations, clamping to
/// the representable range [0, 65.535] m.
float QuantizeHeight(float meters);
std::uint16_t HeightToMillimeters(float meters);
float MillimetersToHeight(std::uint16_t mm);

Eigen::Vector3d DeprojectPixel(const RgbdFrame& frame, int u, int v);

TopDownObservation BuildTopDown(const RgbdFrame& frame, const TopDownConfig& config);

struct WorldXY {
  double x = 0.0;
  double y = 0.0;
};

/// Cell-center convention: pixel (u, v) stands for the center of its cell.
WorldXY TopDownPxToWorld(const TopDownConfig& config, int u, int v);
Pixel WorldToTopDownPx(const TopDownConfig& config, double x, double y);

/// For every pixel with `filled == 0`, returns the index of the nearest
/// pixel with `filled != 0` (squared Euclidean distance, ties broken by the
/// lowest row-major index). Filled pixels map to themselves. Returns
/// nullopt when no pixel is filled.
std::optional<std::vector<std::size_t>> NearestFilledIndex(const Bitmap& filled);

}  // namespace sceneaug

#endif  // SCENEAUG_GEOMETRY_HPP_
