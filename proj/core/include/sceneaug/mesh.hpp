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

#ifndef SCENEAUG_MESH_HPP_
#define SCENEAUG_MESH_HPP_

#include <Eigen/Core>
#include <array>
#include <filesystem>
#include <string_view>
#include <vector>

namespace sceneaug {

/// Triangle mesh in model coordinates (meters, z up).
struct TriMesh {
  std::vector<Eigen::Vector3d> vertices;
  std::vector<std::array<int, 3>> triangles;

  /// Throws EmptyMesh / ParseError when the mesh breaks its invariants.
  void validate() const;
  Eigen::Vector3d bbox_min() const;
  Eigen::Vector3d bbox_max() const;
};

/// Parses the OBJ subset {v, f}. Polygons are fan-triangulated, `v/vt/vn`
/// references use the vertex index only, and negative indices count back
/// from the last vertex. Other directives are ignored. The result is
/// recentered so its bounding-box bottom-center sits at the origin.
TriMesh ParseObj(std::string_view text);
TriMesh LoadObj(const std::filesystem::path& path);
void WriteObj(const TriMesh& mesh, const std::filesystem::path& path);

/// Translates the mesh so the bottom-center of its bounding box is (0, 0, 0).
void RecenterBottom(TriMesh& mesh);

// Procedural primitives, already recentered. Used for asset generation.
TriMesh MakeBox(double sx, double sy, double sz);
/// Surface of revolution of a (radius, z) profile listed bottom to top.
TriMesh MakeLathe(const std::vector<std::array<double, 2>>& profile, int segments);
TriMesh MakeCylinder(double radius, double height, int segments = 24);
TriMesh MakeCone(double radius, double height, int segments = 24);
TriMesh MakeBowl(double radius, double height, int segments = 24);
TriMesh MakeDome(double radius, double height, int segments = 24);
/// Flat tray with a raised rim of the given wall thickness.
TriMesh MakeTray(double sx, double sy, double height, double rim);

}  // namespace sceneaug

#endif  // SCENEAUG_MESH_HPP_
