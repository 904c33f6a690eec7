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

#ifndef SCENEAUG_ASSETS_HPP_
#define SCENEAUG_ASSETS_HPP_

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "sceneaug/image.hpp"
#include "sceneaug/mesh.hpp"

namespace sceneaug {

/// Mesh pools per role plus the 2-D corpora used by the baseline augmenters.
///
/// Directory layout:
///   <dir>/library.json                      role membership and categories
///   <dir>/{pick,place,distractor}/<id>.obj
///   <dir>/cutouts/*.png                     RGBA
///   <dir>/backgrounds/*.png                 RGB
/// A mesh id may appear in several roles.
class AssetLibrary {
 public:
  enum class Pool { kPick, kPlace, kDistractor };

  static AssetLibrary Load(const std::filesystem::path& dir);
  void Save(const std::filesystem::path& dir) const;

  void add_mesh(Pool pool, const std::string& id, TriMesh mesh, const std::string& category);
  void add_cutout(RgbaImage cutout) { cutouts_.push_back(std::move(cutout)); }
  void add_background(RgbImage background) { backgrounds_.push_back(std::move(background)); }

  const std::vector<std::string>& pool(Pool p) const;
  /// Throws InvalidArgument for unknown ids.
  const TriMesh& mesh(const std::string& id) const;
  /// Noun phrase for the mesh; the id itself when no category is recorded.
  std::string category(const std::string& id) const;
  const std::map<std::string, std::string>& categories() const { return categories_; }

  const std::vector<RgbaImage>& cutouts() const { return cutouts_; }
  const std::vector<RgbImage>& backgrounds() const { return backgrounds_; }

  /// Copy restricted to the given mesh ids per pool (corpora are kept).
  AssetLibrary Subset(const std::vector<std::string>& pick, const std::vector<std::string>& place,
                      const std::vector<std::string>& distractor) const;

 private:
  std::vector<std::string> pick_, place_, distractor_;
  std::map<std::string, TriMesh> meshes_;
  std::map<std::string, std::string> categories_;
  std::vector<RgbaImage> cutouts_;
  std::vector<RgbImage> backgrounds_;
};

/// Built-in asset set made from procedural primitives: eight meshes per
/// role, a dozen RGBA cutouts and eight backgrounds. Deterministic in seed.
/// Eight meshes per pool plus procedurally textured cutouts and backgrounds.
AssetLibrary StandardAssetLibrary(std::uint64_t seed = 0);

/// Appends procedurally textured RGBA cutouts and width x height backgrounds whose
/// prompts draw on the given colors and materials.
void AddProceduralCorpora(AssetLibrary& library, std::uint64_t seed,
                          const std::vector<std::string>& colors,
                          const std::vector<std::string>& materials, int cutouts = 12,
                          int backgrounds = 8, int width = 320, int height = 160);

}  // namespace sceneaug

#endif  // SCENEAUG_ASSETS_HPP_
