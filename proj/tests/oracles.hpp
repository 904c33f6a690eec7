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


#ifndef SCENEAUG_TESTS_ORACLES_HPP_
#define SCENEAUG_TESTS_ORACLES_HPP_

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "sceneaug/geometry.hpp"
#include "sceneaug/mesh.hpp"
#include "sceneaug/random.hpp"
#include "sceneaug/rasterizer.hpp"

namespace sceneaug::test_util {

// Independent oracle: sample each cell center against every transformed
// triangle by solving for barycentric coordinates, keep the max z.
inline HeightMap OracleHeights(const TriMesh& mesh, const Placement& p, const TopDownConfig& c,
                               int supersample = 1) {
  const int w = c.width() * supersample;
  const int h = c.height() * supersample;
  HeightMap out = MakeHeightMap(w, h);
  const Eigen::Matrix2d rot = Eigen::Rotation2Dd(p.yaw).toRotationMatrix();
  for (const auto& t : mesh.triangles) {
    Eigen::Vector2d q[3];
    double z[3];
    for (int k = 0; k < 3; ++k) {
      const Eigen::Vector3d& v = mesh.vertices[t[k]];
      q[k] = rot * (p.scale * v.head<2>()) + Eigen::Vector2d(p.x, p.y);
      z[k] = p.scale * v.z();
    }
    Eigen::Matrix2d m;
    m.col(0) = q[1] - q[0];
    m.col(1) = q[2] - q[0];
    if (std::abs(m.determinant()) < 1e-18) continue;
    const Eigen::Matrix2d inv = m.inverse();
    for (int j = 0; j < h; ++j) {
      for (int i = 0; i < w; ++i) {
        const Eigen::Vector2d pt(c.x_min + (i + 0.5) / (c.resolution * supersample),
                                 c.y_min + (j + 0.5) / (c.resolution * supersample));
        const Eigen::Vector2d ab = inv * (pt - q[0]);
        const double a = ab.x(), b = ab.y();
        if (a < -1e-12 || b < -1e-12 || a + b > 1.0 + 1e-12) continue;
        const double zz = z[0] + a * (z[1] - z[0]) + b * (z[2] - z[0]);
        out.at(i, j) = std::max(out.at(i, j), static_cast<float>(std::max(0.0, zz)));
      }
    }
  }
  return out;
}

inline TriMesh RandomMesh(Rng& rng) {
  switch (rng.uniform_int(0, 4)) {
    case 0: return MakeBox(rng.uniform(0.3, 1.0), rng.uniform(0.3, 1.0), rng.uniform(0.2, 1.0));
    case 1: return MakeCylinder(rng.uniform(0.2, 0.5), rng.uniform(0.2, 1.0), static_cast<int>(rng.uniform_int(5, 30)));
    case 2: return MakeCone(rng.uniform(0.2, 0.5), rng.uniform(0.2, 1.0), static_cast<int>(rng.uniform_int(5, 30)));
    case 3: return MakeBowl(rng.uniform(0.2, 0.5), rng.uniform(0.1, 0.5), static_cast<int>(rng.uniform_int(6, 30)));
    default: return MakeDome(rng.uniform(0.2, 0.5), rng.uniform(0.1, 0.5), static_cast<int>(rng.uniform_int(6, 30)));
  }
}

// Classic crossing-number test at the pixel center (u, v).
inline bool Pnpoly(const std::vector<Pixel>& poly, double x, double y) {
  bool inside = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const double xi = poly[i].u, yi = poly[i].v, xj = poly[j].u, yj = poly[j].v;
    if (((yi > y) != (yj > y)) && (x < (xj - xi) * (y - yi) / (yj - yi) + xi)) inside = !inside;
  }
  return inside;
}

inline std::size_t OracleCount(const std::vector<Pixel>& poly, int w, int h) {
  std::size_t n = 0;
  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < w; ++u) n += Pnpoly(poly, u, v);
  }
  return n;
}

}  // namespace sceneaug::test_util

#endif  // SCENEAUG_TESTS_ORACLES_HPP_
