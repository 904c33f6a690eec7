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

#include "sceneaug/rasterizer.hpp"

#include <algorithm>
#include <cmath>

#include "sceneaug/scene.hpp"

namespace sceneaug {

void Placement::validate(const TopDownConfig& config) const {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    Fail(ErrorCode::kInvalidArgument, "placement scale must be positive");
  }
  if (!std::isfinite(yaw)) Fail(ErrorCode::kInvalidArgument, "placement yaw not finite");
  if (!(x >= config.x_min && x <= config.x_max && y >= config.y_min && y <= config.y_max)) {
    Fail(ErrorCode::kOutOfBounds, "placement center outside the workspace");
  }
}

namespace {

struct Vec2z {
  double x, y, z;
};

bool IsTopLeft(const Vec2z& a, const Vec2z& b) {
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  return (dy == 0.0 && dx > 0.0) || dy < 0.0;
}

double Edge(const Vec2z& a, const Vec2z& b, double px, double py) {
  return (b.x - a.x) * (py - a.y) - (b.y - a.y) * (px - a.x);
}

}  // namespace

RenderPatch Rasterize(const TriMesh& mesh, const Placement& placement,
                      const TopDownConfig& config) {
  config.validate();
  mesh.validate();
  placement.validate(config);
  const int w = config.width();
  const int h = config.height();
  RenderPatch patch{MakeHeightMap(w, h), MakeBitmap(w, h)};
  Bitmap covered = MakeBitmap(w, h);

  const double c = std::cos(placement.yaw);
  const double s = std::sin(placement.yaw);
  std::vector<Vec2z> pts;
  pts.reserve(mesh.vertices.size());
  for (const auto& v : mesh.vertices) {
    const double mx = placement.scale * v.x();
    const double my = placement.scale * v.y();
    const double wx = c * mx - s * my + placement.x;
    const double wy = s * mx + c * my + placement.y;
    pts.push_back({(wx - config.x_min) * config.resolution,
                   (wy - config.y_min) * config.resolution, placement.scale * v.z()});
  }

  bool any = false;
  for (const auto& tri : mesh.triangles) {
    Vec2z a = pts[tri[0]];
    Vec2z b = pts[tri[1]];
    Vec2z d = pts[tri[2]];
    double area = Edge(a, b, d.x, d.y);
    if (area == 0.0) continue;
    if (area < 0.0) {
      std::swap(b, d);
      area = -area;
    }
    const double min_x = std::min({a.x, b.x, d.x});
    const double max_x = std::max({a.x, b.x, d.x});
    const double min_y = std::min({a.y, b.y, d.y});
    const double max_y = std::max({a.y, b.y, d.y});
    const int u0 = std::max(0, static_cast<int>(std::floor(min_x - 0.5)));
    const int u1 = std::min(w - 1, static_cast<int>(std::ceil(max_x - 0.5)));
    const int v0 = std::max(0, static_cast<int>(std::floor(min_y - 0.5)));
    const int v1 = std::min(h - 1, static_cast<int>(std::ceil(max_y - 0.5)));
    const bool tl_ab = IsTopLeft(a, b);
    const bool tl_bd = IsTopLeft(b, d);
    const bool tl_da = IsTopLeft(d, a);
    for (int v = v0; v <= v1; ++v) {
      const double py = v + 0.5;
      for (int u = u0; u <= u1; ++u) {
        const double px = u + 0.5;
        const double e_ab = Edge(a, b, px, py);
        const double e_bd = Edge(b, d, px, py);
        const double e_da = Edge(d, a, px, py);
        if (e_ab < 0.0 || e_bd < 0.0 || e_da < 0.0) continue;
        if ((e_ab == 0.0 && !tl_ab) || (e_bd == 0.0 && !tl_bd) || (e_da == 0.0 && !tl_da)) continue;
        // Barycentric weights: e_bd weighs a, e_da weighs b, e_ab weighs d.
        const double z = (e_bd * a.z + e_da * b.z + e_ab * d.z) / area;
        const float zf = static_cast<float>(std::max(0.0, z));
        float& cell = patch.height.at(u, v);
        if (!covered.at(u, v) || zf > cell) cell = zf;
        covered.at(u, v) = 1;
        any = true;
      }
    }
  }
  if (!any) Fail(ErrorCode::kDegenerateMesh, "mesh footprint covers no cells");
  patch.mask = MaskFromHeights(patch.height);
  // A footprint of zero-height geometry still counts as degenerate.
  if (!AnySet(patch.mask)) Fail(ErrorCode::kDegenerateMesh, "mesh footprint has zero height");
  return patch;
}

double FitScaleToFootprint(const TriMesh& mesh, double target_w, double target_h) {
  if (!(target_w > 0.0) || !(target_h > 0.0)) {
    Fail(ErrorCode::kInvalidArgument, "target extents must be positive");
  }
  mesh.validate();
  const Eigen::Vector3d extent = mesh.bbox_max() - mesh.bbox_min();
  if (!(extent.x() > 0.0) || !(extent.y() > 0.0)) {
    Fail(ErrorCode::kDegenerateMesh, "mesh has zero XY extent");
  }
  return std::min(target_w / extent.x(), target_h / extent.y());
}

}  // namespace sceneaug
