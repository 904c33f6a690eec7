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

#include "sceneaug/assets.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "json_util.hpp"
#include "sceneaug/codec.hpp"
#include "sceneaug/genbackend.hpp"
#include "sceneaug/random.hpp"

namespace sceneaug {

namespace fs = std::filesystem;
using internal::Json;

namespace {

const char* PoolDir(AssetLibrary::Pool p) {
  switch (p) {
    case AssetLibrary::Pool::kPick: return "pick";
    case AssetLibrary::Pool::kPlace: return "place";
    case AssetLibrary::Pool::kDistractor: return "distractor";
  }
  return "";
}

constexpr AssetLibrary::Pool kPools[] = {AssetLibrary::Pool::kPick, AssetLibrary::Pool::kPlace,
                                         AssetLibrary::Pool::kDistractor};

std::vector<fs::path> SortedPngs(const fs::path& dir) {
  std::vector<fs::path> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

const std::vector<std::string>& AssetLibrary::pool(Pool p) const {
  switch (p) {
    case Pool::kPick: return pick_;
    case Pool::kPlace: return place_;
    case Pool::kDistractor: return distractor_;
  }
  return pick_;
}

void AssetLibrary::add_mesh(Pool p, const std::string& id, TriMesh mesh, const std::string& category) {
  mesh.validate();
  auto& ids = p == Pool::kPick ? pick_ : p == Pool::kPlace ? place_ : distractor_;
  if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
  meshes_[id] = std::move(mesh);
  if (!category.empty()) categories_[id] = category;
}

const TriMesh& AssetLibrary::mesh(const std::string& id) const {
  auto it = meshes_.find(id);
  if (it == meshes_.end()) Fail(ErrorCode::kInvalidArgument, "unknown mesh id '" + id + "'");
  return it->second;
}

std::string AssetLibrary::category(const std::string& id) const {
  auto it = categories_.find(id);
  return it == categories_.end() ? id : it->second;
}

AssetLibrary AssetLibrary::Subset(const std::vector<std::string>& pick,
                                  const std::vector<std::string>& place,
                                  const std::vector<std::string>& distractor) const {
  AssetLibrary out;
  auto copy = [&](Pool p, const std::vector<std::string>& ids) {
    for (const auto& id : ids) out.add_mesh(p, id, mesh(id), category(id));
  };
  copy(Pool::kPick, pick);
  copy(Pool::kPlace, place);
  copy(Pool::kDistractor, distractor);
  out.cutouts_ = cutouts_;
  out.backgrounds_ = backgrounds_;
  return out;
}

AssetLibrary AssetLibrary::Load(const fs::path& dir) {
  const fs::path index = dir / "library.json";
  const std::string what = index.string();
  const Json j = internal::ParseJson(ReadFileText(index), what);
  if (internal::GetOr<int>(j, "version", 1, what) != 1) {
    Fail(ErrorCode::kFormatError, what + ": unsupported version");
  }
  const auto categories =
      internal::GetOr<std::map<std::string, std::string>>(j, "categories", {}, what);
  AssetLibrary lib;
  for (Pool p : kPools) {
    for (const auto& id : internal::GetOr<std::vector<std::string>>(j, PoolDir(p), {}, what)) {
      const fs::path file = dir / PoolDir(p) / (id + ".obj");
      if (!fs::exists(file)) Fail(ErrorCode::kIoError, what + ": missing mesh " + file.string());
      auto it = categories.find(id);
      lib.add_mesh(p, id, LoadObj(file), it == categories.end() ? "" : it->second);
    }
  }
  const fs::path cutout_dir = dir / internal::GetOr<std::string>(j, "cutout_dir", "cutouts", what);
  for (const auto& png : SortedPngs(cutout_dir)) lib.add_cutout(DecodePngAsRgba(ReadFileBytes(png)));
  const fs::path background_dir =
      dir / internal::GetOr<std::string>(j, "background_dir", "backgrounds", what);
  for (const auto& png : SortedPngs(background_dir)) {
    lib.add_background(DecodePngAsRgb(ReadFileBytes(png)));
  }
  return lib;
}

void AssetLibrary::Save(const fs::path& dir) const {
  Json j{{"version", 1}, {"categories", categories_},
         {"cutout_dir", "cutouts"}, {"background_dir", "backgrounds"}};
  for (Pool p : kPools) {
    j[PoolDir(p)] = pool(p);
    fs::create_directories(dir / PoolDir(p));
    for (const auto& id : pool(p)) WriteObj(mesh(id), dir / PoolDir(p) / (id + ".obj"));
  }
  fs::create_directories(dir / "cutouts");
  fs::create_directories(dir / "backgrounds");
  for (std::size_t i = 0; i < cutouts_.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "cutout_%03zu.png", i);
    WriteFileAtomic(dir / "cutouts" / name, EncodePngRgba(cutouts_[i]));
  }
  for (std::size_t i = 0; i < backgrounds_.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "background_%03zu.png", i);
    WriteFileAtomic(dir / "backgrounds" / name, EncodePngRgb(backgrounds_[i]));
  }
  WriteFileAtomic(dir / "library.json", j.dump(2));
}

AssetLibrary StandardAssetLibrary(std::uint64_t seed) {
  AssetLibrary lib;
  using P = AssetLibrary::Pool;
  lib.add_mesh(P::kPick, "box", MakeBox(0.06, 0.06, 0.05), "box");
  lib.add_mesh(P::kPick, "can", MakeCylinder(0.03, 0.09), "can");
  lib.add_mesh(P::kPick, "cup", MakeBowl(0.035, 0.08), "cup");
  lib.add_mesh(P::kPick, "ball", MakeDome(0.035, 0.06), "ball");
  lib.add_mesh(P::kPick, "carton", MakeBox(0.05, 0.04, 0.08), "carton");
  lib.add_mesh(P::kPick, "cone", MakeCone(0.03, 0.07), "cone");
  lib.add_mesh(P::kPick, "package", MakeBox(0.07, 0.05, 0.03), "package");
  lib.add_mesh(P::kPick, "bottle",
               MakeLathe({{0.03, 0.0}, {0.03, 0.10}, {0.012, 0.14}, {0.012, 0.17}}, 24), "bottle");

  lib.add_mesh(P::kPlace, "coaster", MakeCylinder(0.05, 0.008), "coaster");
  lib.add_mesh(P::kPlace, "plate",
               MakeLathe({{0.07, 0.0}, {0.10, 0.02}, {0.09, 0.02}, {0.07, 0.005}, {0.0, 0.005}}, 24),
               "plate");
  lib.add_mesh(P::kPlace, "tray", MakeTray(0.14, 0.10, 0.025, 0.008), "tray");
  lib.add_mesh(P::kPlace, "bowl", MakeBowl(0.07, 0.06), "bowl");
  lib.add_mesh(P::kPlace, "mat", MakeBox(0.12, 0.12, 0.005), "mat");
  lib.add_mesh(P::kPlace, "basket", MakeTray(0.12, 0.12, 0.06, 0.006), "basket");
  lib.add_mesh(P::kPlace, "dish", MakeBowl(0.08, 0.025), "dish");
  lib.add_mesh(P::kPlace, "lid", MakeTray(0.10, 0.08, 0.015, 0.01), "lid");

  lib.add_mesh(P::kDistractor, "block", MakeBox(0.04, 0.04, 0.04), "block");
  lib.add_mesh(P::kDistractor, "pyramid", MakeCone(0.04, 0.05, 4), "pyramid");
  lib.add_mesh(P::kDistractor, "flask", MakeCylinder(0.025, 0.12), "flask");
  lib.add_mesh(P::kDistractor, "dome", MakeDome(0.05, 0.04), "dome");
  lib.add_mesh(P::kDistractor, "brick", MakeBox(0.09, 0.045, 0.035), "brick");
  lib.add_mesh(P::kDistractor, "ring",
               MakeLathe({{0.04, 0.0}, {0.045, 0.02}, {0.03, 0.02}, {0.025, 0.0}}, 24), "ring");
  lib.add_mesh(P::kDistractor, "mug", MakeBowl(0.04, 0.09), "mug");
  lib.add_mesh(P::kDistractor, "spike", MakeCone(0.03, 0.04), "spike");

  std::vector<std::string> colors, materials;
  for (const auto& c : ColorVocabulary()) colors.emplace_back(c.name);
  for (const auto& m : MaterialVocabulary()) materials.emplace_back(m);
  AddProceduralCorpora(lib, seed, colors, materials);
  return lib;
}

void AddProceduralCorpora(AssetLibrary& library, std::uint64_t seed,
                          const std::vector<std::string>& colors,
                          const std::vector<std::string>& materials, int cutouts,
                          int backgrounds, int width, int height) {
  if (colors.empty() || materials.empty()) {
    Fail(ErrorCode::kInvalidArgument, "corpus prompts need colors and materials");
  }
  ProceduralBackend backend;
  Rng rng(DeriveSeed(seed, {HashString("procedural_corpora")}));
  auto prompt = [&](const char* noun) {
    const auto& c = colors[rng.uniform_int(0, static_cast<std::int64_t>(colors.size()) - 1)];
    const auto& m = materials[rng.uniform_int(0, static_cast<std::int64_t>(materials.size()) - 1)];
    return "a " + c + " " + m + " " + noun;
  };

  for (int i = 0; i < cutouts; ++i) {
    const int w = static_cast<int>(rng.uniform_int(18, 48));
    const int h = static_cast<int>(rng.uniform_int(18, 48));
    GenRequest req{MakeRgb(w, h), MakeHeightMap(w, h), MakeBitmap(w, h), prompt("object"),
                   rng.next()};
    const bool ellipse = rng.bernoulli(0.5);
    for (int v = 0; v < h; ++v) {
      for (int u = 0; u < w; ++u) {
        const double du = (u + 0.5) / w - 0.5;
        const double dv = (v + 0.5) / h - 0.5;
        const bool inside =
            ellipse ? du * du + dv * dv <= 0.25 : std::abs(du) < 0.45 && std::abs(dv) < 0.45;
        req.region_mask.at(u, v) = inside ? 1 : 0;
      }
    }
    const RgbImage rgb = Generate(backend, req).rgb;
    RgbaImage cutout(w, h, 4);
    for (int v = 0; v < h; ++v) {
      for (int u = 0; u < w; ++u) {
        for (int c = 0; c < 3; ++c) cutout.at(u, v, c) = rgb.at(u, v, c);
        cutout.at(u, v, 3) = req.region_mask.at(u, v) ? 255 : 0;
      }
    }
    library.add_cutout(std::move(cutout));
  }

  for (int i = 0; i < backgrounds; ++i) {
    GenRequest req{MakeRgb(width, height), MakeHeightMap(width, height),
                   Bitmap(width, height, 1, 1), prompt("table"), rng.next()};
    library.add_background(Generate(backend, req).rgb);
  }
}

}  // namespace sceneaug
