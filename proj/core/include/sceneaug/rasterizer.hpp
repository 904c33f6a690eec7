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

#ifndef SCENEAUG_RASTERIZER_HPP_
#define SCENEAUG_RASTERIZER_HPP_

#include "sceneaug/geometry.hpp"
#include "sceneaug/image.hpp"
#include "sceneaug/mesh.hpp"

namespace sceneaug {

/// Pose of a mesh resting on the table: model frame is scaled, rotated by
/// `yaw` about +z, then translated to (x, y) on the table plane.
struct Placement {
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;
  double scale = 1.0;

  void validate(const TopDownConfig& config) const;
  bool operator==(const Placement&) const = default;
};

struct RenderPatch {
  HeightMap height;  // meters above table, 0 where the mesh is absent
  Bitmap mask;       // height > 1e-6
};

/// Orthographic top-down rasterization: per covered cell center keeps the
/// maximum interpolated z. Edges follow the top-left fill rule. Throws
/// DegenerateMesh when no cell is covered.
RenderPatch Rasterize(const TriMesh& mesh, const Placement& placement,
                      const TopDownConfig& config);

/// min(w / mesh_w, h / mesh_h) over the model-frame XY bounding box.
double FitScaleToFootprint(const TriMesh& mesh, double target_w, double target_h);

}  // namespace sceneaug

#endif  // SCENEAUG_RASTERIZER_HPP_
