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

#include "sceneaug/geometry.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <limits>

namespace sceneaug {

CameraIntrinsics CameraIntrinsics::Make(double fx, double fy, double cx, double cy, int width,
                                        int height) {
  if (!(fx > 0.0) || !(fy > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "focal lengths must be positive");
  }
  if (width <= 0 || height <= 0) Fail(ErrorCode::kInvalidArgument, "sensor size must be positive");
  if (!(cx >= 0.0 && cx < width && cy >= 0.0 && cy < height)) {
    Fail(ErrorCode::kInvalidArgument, "principal point outside the sensor");
  }
  CameraIntrinsics k;
  k.fx_ = fx;
  k.fy_ = fy;
  k.cx_ = cx;
  k.cy_ = cy;
  k.width_ = width;
  k.height_ = height;
  return k;
}

CameraPose CameraPose::Make(const Eigen::Matrix3d& rotation, const Eigen::Vector3d& translation) {
  if (!rotation.allFinite() || !translation.allFinite()) {
    Fail(ErrorCode::kInvalidArgument, "pose contains non-finite values");
  }
  const double ortho_err = (rotation.transpose() * rotation - Eigen::Matrix3d::Identity())
                               .cwiseAbs()
                               .maxCoeff();
  if (ortho_err > 1e-6 || std::abs(rotation.determinant() - 1.0) > 1e-6) {
    Fail(ErrorCode::kInvalidArgument, "rotation is not a proper orthonormal matrix");
  }
  CameraPose pose;
  pose.rotation_ = rotation;
  pose.translation_ = translation;
  return pose;
}

CameraPose CameraPose::Identity() { return CameraPose(); }

void RgbdFrame::validate() const {
  if (rgb.channels() != 3 || depth.channels() != 1 || !rgb.same_extent(depth)) {
    Fail(ErrorCode::kDimMismatch, "rgb and depth must share H x W");
  }
  if (rgb.width() != intrinsics.width() || rgb.height() != intrinsics.height()) {
    Fail(ErrorCode::kDimMismatch, "image size differs from intrinsics");
  }
}

void TopDownConfig::validate() const {
  if (!(x_max > x_min) || !(y_max > y_min)) {
    Fail(ErrorCode::kInvalidArgument, "workspace bounds must satisfy max > min");
  }
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    Fail(ErrorCode::kInvalidArgument, "resolution must be positive");
  }
  if (!std::isfinite(table_height)) Fail(ErrorCode::kInvalidArgument, "table height not finite");
}

int TopDownConfig::width() const {
  return static_cast<int>(std::ceil((x_max - x_min) * resolution - 1e-9));
}

int TopDownConfig::height() const {
  return static_cast<int>(std::ceil((y_max - y_min) * resolution - 1e-9));
}

std::uint16_t HeightToMillimeters(float meters) {
  if (!(meters > 0.0f)) return 0;
  const double mm = std::round(static_cast<double>(meters) * 1000.0);
  return static_cast<std::uint16_t>(std::min(mm, 65535.0));
}

float MillimetersToHeight(std::uint16_t mm) { return static_cast<float>(mm) / 1000.0f; }

float QuantizeHeight(float meters) { return MillimetersToHeight(HeightToMillimeters(meters)); }

Eigen::Vector3d DeprojectPixel(const RgbdFrame& frame, int u, int v) {
  if (!frame.depth.contains(u, v)) Fail(ErrorCode::kOutOfBounds, "pixel outside the frame");
  const float d = frame.depth.at(u, v);
  if (!(d > 0.0f) || d > kMaxValidDepth || !std::isfinite(d)) {
    Fail(ErrorCode::kInvalidDepth, "no valid depth at pixel");
  }
  const auto& k = frame.intrinsics;
  const double z = d;
  const Eigen::Vector3d cam((u - k.cx()) * z / k.fx(), (v - k.cy()) * z / k.fy(), z);
  return frame.pose.apply(cam);
}

WorldXY TopDownPxToWorld(const TopDownConfig& config, int u, int v) {
  if (u < 0 || v < 0 || u >= config.width() || v >= config.height()) {
    Fail(ErrorCode::kOutOfBounds, "top-down pixel outside the image");
  }
  return {config.x_min + (u + 0.5) / config.resolution,
          config.y_min + (v + 0.5) / config.resolution};
}

namespace {

bool CellOf(const TopDownConfig& config, double x, double y, int width, int height, Pixel* out) {
  const double fu = std::floor((x - config.x_min) * config.resolution);
  const double fv = std::floor((y - config.y_min) * config.resolution);
  if (!(fu >= 0.0 && fv >= 0.0 && fu < width && fv < height)) return false;
  *out = {static_cast<int>(fu), static_cast<int>(fv)};
  return true;
}

// Exact 1-D squared distance transform (lower envelope of parabolas).
// Missing samples carry kFar, which is finite so the envelope arithmetic
// stays exact in double precision.
constexpr double kFar = 1e12;

void DistanceTransform1D(const std::vector<double>& f, std::vector<double>& d,
                         std::vector<int>& hull, std::vector<double>& breaks) {
  const int n = static_cast<int>(f.size());
  constexpr double kInf = std::numeric_limits<double>::infinity();
  auto intersect = [&](int q, int p) {
    return ((f[q] + static_cast<double>(q) * q) - (f[p] + static_cast<double>(p) * p)) /
           (2.0 * q - 2.0 * p);
  };
  int k = 0;
  hull[0] = 0;
  breaks[0] = -kInf;
  breaks[1] = kInf;
  for (int q = 1; q < n; ++q) {
    double s = intersect(q, hull[k]);
    while (s <= breaks[k]) {
      --k;
      s = intersect(q, hull[k]);
    }
    ++k;
    hull[k] = q;
    breaks[k] = s;
    breaks[k + 1] = kInf;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (breaks[k + 1] < q) ++k;
    const double diff = q - hull[k];
    d[q] = diff * diff + f[hull[k]];
  }
}

}  // namespace

Pixel WorldToTopDownPx(const TopDownConfig& config, double x, double y) {
  Pixel p;
  if (!CellOf(config, x, y, config.width(), config.height(), &p)) {
    Fail(ErrorCode::kOutOfBounds, "world point outside the workspace");
  }
  return p;
}

std::optional<std::vector<std::size_t>> NearestFilledIndex(const Bitmap& filled) {
  const int w = filled.width();
  const int h = filled.height();
  if (!AnySet(filled)) return std::nullopt;

  // Squared Euclidean distance transform: columns, then rows.
  std::vector<double> dist(filled.pixel_count(), kFar);
  const int n = std::max(w, h);
  std::vector<double> f(n), d(n), breaks(n + 2);
  std::vector<int> hull(n);
  for (int u = 0; u < w; ++u) {
    f.resize(h);
    d.resize(h);
    for (int v = 0; v < h; ++v) f[v] = filled.at(u, v) ? 0.0 : kFar;
    DistanceTransform1D(f, d, hull, breaks);
    for (int v = 0; v < h; ++v) dist[static_cast<std::size_t>(v) * w + u] = d[v];
  }
  for (int v = 0; v < h; ++v) {
    f.resize(w);
    d.resize(w);
    for (int u = 0; u < w; ++u) f[u] = dist[static_cast<std::size_t>(v) * w + u];
    DistanceTransform1D(f, d, hull, breaks);
    for (int u = 0; u < w; ++u) dist[static_cast<std::size_t>(v) * w + u] = d[u];
  }

  // The distance is exact; scan lattice points at exactly that distance in
  // row-major order so the first filled one is the lowest-index source.
  std::vector<std::size_t> nearest(filled.pixel_count());
  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < w; ++u) {
      const std::size_t idx = static_cast<std::size_t>(v) * w + u;
      if (filled.at(u, v)) {
        nearest[idx] = idx;
        continue;
      }
      const auto d2 = static_cast<long long>(std::llround(dist[idx]));
      const auto r = static_cast<long long>(std::floor(std::sqrt(static_cast<double>(d2))));
      bool found = false;
      for (long long dv = -r; dv <= r && !found; ++dv) {
        const long long vv = v + dv;
        if (vv < 0 || vv >= h) continue;
        const long long rem = d2 - dv * dv;
        if (rem < 0) continue;
        auto du = static_cast<long long>(std::llround(std::sqrt(static_cast<double>(rem))));
        if (du * du != rem) continue;
        for (long long uu : {u - du, u + du}) {
          if (uu < 0 || uu >= w) continue;
          if (filled.at(static_cast<int>(uu), static_cast<int>(vv))) {
            nearest[idx] = static_cast<std::size_t>(vv) * w + static_cast<std::size_t>(uu);
            found = true;
            break;
          }
        }
      }
      if (!found) Fail(ErrorCode::kInvalidArgument, "distance transform inconsistency");
    }
  }
  return nearest;
}

TopDownObservation BuildTopDown(const RgbdFrame& frame, const TopDownConfig& config) {
  config.validate();
  frame.validate();
  const int w = config.width();
  const int h = config.height();
  constexpr double kNoPoint = -std::numeric_limits<double>::infinity();
  std::vector<double> top(static_cast<std::size_t>(w) * h, kNoPoint);
  RgbImage rgb = MakeRgb(w, h);
  Bitmap filled = MakeBitmap(w, h);

  for (int v = 0; v < frame.depth.height(); ++v) {
    for (int u = 0; u < frame.depth.width(); ++u) {
      const float d = frame.depth.at(u, v);
      if (!(d > 0.0f) || d > kMaxValidDepth || !std::isfinite(d)) continue;
      const Eigen::Vector3d p = DeprojectPixel(frame, u, v);
      Pixel cell;
      if (!CellOf(config, p.x(), p.y(), w, h, &cell)) continue;
      const std::size_t idx = static_cast<std::size_t>(cell.v) * w + cell.u;
      if (p.z() > top[idx]) {
        top[idx] = p.z();
        filled.at(cell) = 1;
        for (int c = 0; c < 3; ++c) rgb.at(cell, c) = frame.rgb.at(u, v, c);
      }
    }
  }

  auto nearest = NearestFilledIndex(filled);
  if (!nearest) Fail(ErrorCode::kEmptyProjection, "no valid point projects into the workspace");

  TopDownObservation obs{MakeRgb(w, h), MakeHeightMap(w, h), config};
  for (std::size_t i = 0; i < nearest->size(); ++i) {
    const std::size_t src = (*nearest)[i];
    const double z = top[src] - config.table_height;
    obs.heightmap.data()[i] = QuantizeHeight(static_cast<float>(std::max(0.0, z)));
    for (int c = 0; c < 3; ++c) obs.rgb.data()[3 * i + c] = rgb.data()[3 * src + c];
  }
  return obs;
}

}  // namespace sceneaug
