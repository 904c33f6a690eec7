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

#include "sceneaug/dataset_io.hpp"

#include <fcntl.h>
#include <stdio.h>
#include <unistd.h>

#include <set>
#include <system_error>

#include "json_util.hpp"
#include "sceneaug/codec.hpp"

namespace sceneaug {

namespace fs = std::filesystem;
using internal::Get;
using internal::GetOr;
using internal::Json;

namespace {

constexpr const char* kManifestFile = "dataset.json";

Json DemoToJson(const Demo& demo) {
  Json j;
  j["id"] = demo.id;
  j["task_text"] = demo.task_text;
  if (demo.action) {
    j["action"] = {{"pick", internal::ToJson(demo.action->pick)},
                   {"place", internal::ToJson(demo.action->place)}};
  } else {
    j["action"] = nullptr;
  }
  j["provenance"] = {
      {"kind", demo.provenance.kind == Provenance::Kind::kOriginal ? "original" : "augmented"},
      {"parent_id", demo.provenance.parent_id},
      {"plan_digest", demo.provenance.plan_digest}};
  j["condition"] = std::string(ToString(demo.condition));
  j["config"] = internal::ToJson(demo.obs.config);
  j["width"] = demo.obs.width();
  j["height"] = demo.obs.height();
  j["distractor_count"] = demo.masks.distractors.size();
  return j;
}

Json ManifestToJson(const Manifest& m) {
  return Json{{"format_version", m.format_version},
              {"count", m.ids.size()},
              {"ids", m.ids},
              {"task_names", m.task_names},
              {"seeds", m.seeds},
              {"config_digest", m.config_digest}};
}

Image<std::uint16_t> HeightsToMillimeters(const HeightMap& heights) {
  Image<std::uint16_t> mm(heights.width(), heights.height(), 1);
  for (std::size_t i = 0; i < heights.pixel_count(); ++i) {
    mm.data()[i] = HeightToMillimeters(heights.data()[i]);
  }
  return mm;
}

void EnsureDirectory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) Fail(ErrorCode::kIoError, "cannot create " + dir.string() + ": " + ec.message());
}

}  // namespace

Image<std::uint8_t> EncodeMaskIndices(const MaskSet& masks) {
  const int w = masks.pick_object.width();
  const int h = masks.pick_object.height();
  if (masks.distractors.size() > 252) {
    Fail(ErrorCode::kInvalidArgument, "too many distractor masks to encode");
  }
  Image<std::uint8_t> idx(w, h, 1);
  auto paint = [&](const Bitmap& m, std::uint8_t value) {
    if (m.width() != w || m.height() != h) Fail(ErrorCode::kDimMismatch, "mask dims differ");
    for (std::size_t i = 0; i < m.pixel_count(); ++i) {
      if (!m.data()[i]) continue;
      if (idx.data()[i] != 0) {
        Fail(ErrorCode::kInvalidArgument, "overlapping masks cannot be encoded");
      }
      idx.data()[i] = value;
    }
  };
  paint(masks.pick_object, 1);
  paint(masks.place_target, 2);
  for (std::size_t k = 0; k < masks.distractors.size(); ++k) {
    paint(masks.distractors[k], static_cast<std::uint8_t>(3 + k));
  }
  return idx;
}

MaskSet DecodeMaskIndices(const Image<std::uint8_t>& indices, std::size_t distractor_count) {
  MaskSet m = MaskSet::Empty(indices.width(), indices.height());
  m.distractors.assign(distractor_count, MakeBitmap(indices.width(), indices.height()));
  for (std::size_t i = 0; i < indices.pixel_count(); ++i) {
    const std::uint8_t value = indices.data()[i];
    if (value == 0) continue;
    if (value == 1) {
      m.pick_object.data()[i] = 1;
    } else if (value == 2) {
      m.place_target.data()[i] = 1;
    } else if (static_cast<std::size_t>(value - 3) < distractor_count) {
      m.distractors[value - 3].data()[i] = 1;
    } else {
      Fail(ErrorCode::kFormatError, "mask index exceeds distractor count");
    }
  }
  return m;
}

void SaveDemo(const Demo& demo, const fs::path& demo_dir) {
  EnsureDirectory(demo_dir);
  WriteFileAtomic(demo_dir / "rgb.png", EncodePngRgb(demo.obs.rgb));
  WriteFileAtomic(demo_dir / "height.png", EncodePngGray16(HeightsToMillimeters(demo.obs.heightmap)));
  WriteFileAtomic(demo_dir / "masks.png", EncodePngIndexed(EncodeMaskIndices(demo.masks)));
  WriteFileAtomic(demo_dir / "demo.json", DemoToJson(demo).dump(2));
}

Demo LoadDemo(const fs::path& demo_dir) {
  const std::string what = demo_dir.string();
  for (const char* f : {"rgb.png", "height.png", "masks.png", "demo.json"}) {
    if (!fs::exists(demo_dir / f)) Fail(ErrorCode::kFormatError, what + ": missing " + f);
  }
  const Json j = internal::ParseJson(ReadFileText(demo_dir / "demo.json"), what + "/demo.json");
  Demo demo;
  demo.id = Get<std::string>(j, "id", what);
  demo.task_text = Get<std::string>(j, "task_text", what);
  if (j.contains("action") && !j["action"].is_null()) {
    const Json& a = j["action"];
    if (!a.is_object() || !a.contains("pick") || !a.contains("place")) {
      Fail(ErrorCode::kFormatError, what + ": malformed action");
    }
    demo.action = PickPlaceAction{internal::PixelFromJson(a["pick"], what),
                                  internal::PixelFromJson(a["place"], what)};
  }
  const Json prov = GetOr<Json>(j, "provenance", Json::object(), what);
  const std::string kind = GetOr<std::string>(prov, "kind", "original", what);
  if (kind != "original" && kind != "augmented") {
    Fail(ErrorCode::kFormatError, what + ": unknown provenance kind");
  }
  demo.provenance.kind =
      kind == "original" ? Provenance::Kind::kOriginal : Provenance::Kind::kAugmented;
  demo.provenance.parent_id = GetOr<std::string>(prov, "parent_id", "", what);
  demo.provenance.plan_digest = GetOr<std::string>(prov, "plan_digest", "", what);
  demo.condition = ConditionFromString(GetOr<std::string>(j, "condition", "", what));
  demo.obs.config = internal::TopDownConfigFromJson(Get<Json>(j, "config", what), what);
  demo.obs.config.validate();

  demo.obs.rgb = DecodePngAsRgb(ReadFileBytes(demo_dir / "rgb.png"));
  const auto mm = DecodePngAsGray16(ReadFileBytes(demo_dir / "height.png"));
  const auto indices = DecodePngAsIndices(ReadFileBytes(demo_dir / "masks.png"));

  const int w = Get<int>(j, "width", what);
  const int h = Get<int>(j, "height", what);
  if (w != demo.obs.config.width() || h != demo.obs.config.height()) {
    Fail(ErrorCode::kFormatError, what + ": dims inconsistent with config");
  }
  if (demo.obs.rgb.width() != w || demo.obs.rgb.height() != h || mm.width() != w ||
      mm.height() != h || indices.width() != w || indices.height() != h) {
    Fail(ErrorCode::kFormatError, what + ": image dims mismatch");
  }
  demo.obs.heightmap = MakeHeightMap(w, h);
  for (std::size_t i = 0; i < mm.pixel_count(); ++i) {
    demo.obs.heightmap.data()[i] = MillimetersToHeight(mm.data()[i]);
  }
  demo.masks = DecodeMaskIndices(indices, Get<std::size_t>(j, "distractor_count", what));
  return demo;
}

void SaveDataset(const DemoDataset& dataset, const fs::path& dir) {
  Manifest manifest = dataset.manifest;
  manifest.ids.clear();
  for (const auto& d : dataset.demos) {
    if (d.id.empty() || d.id.find('/') != std::string::npos || d.id == "." || d.id == "..") {
      Fail(ErrorCode::kInvalidArgument, "invalid demo id '" + d.id + "'");
    }
    manifest.ids.push_back(d.id);
  }
  if (std::set<std::string>(manifest.ids.begin(), manifest.ids.end()).size() !=
      manifest.ids.size()) {
    Fail(ErrorCode::kInvalidArgument, "demo ids are not unique");
  }

  fs::path target = fs::absolute(dir).lexically_normal();
  if (target.filename().empty()) target = target.parent_path();
  const std::string suffix = "." + std::to_string(::getpid());
  fs::path staging = target;
  staging += ".staging" + suffix;
  std::error_code ec;
  fs::remove_all(staging, ec);
  EnsureDirectory(staging);

  for (const auto& d : dataset.demos) SaveDemo(d, staging / d.id);
  WriteFileAtomic(staging / kManifestFile, ManifestToJson(manifest).dump(2));

  if (fs::exists(target)) {
    fs::path old = target;
    old += ".old" + suffix;
    fs::remove_all(old, ec);
    fs::rename(target, old, ec);
    if (ec) Fail(ErrorCode::kIoError, "cannot replace " + target.string() + ": " + ec.message());
    fs::rename(staging, target, ec);
    if (ec) Fail(ErrorCode::kIoError, "cannot commit " + target.string() + ": " + ec.message());
    fs::remove_all(old, ec);
  } else {
    if (!target.parent_path().empty()) EnsureDirectory(target.parent_path());
    fs::rename(staging, target, ec);
    if (ec) Fail(ErrorCode::kIoError, "cannot commit " + target.string() + ": " + ec.message());
  }
}

void ReplaceDemo(const fs::path& dataset_dir, const Demo& demo) {
  const fs::path target = dataset_dir / demo.id;
  if (!fs::is_directory(target)) {
    Fail(ErrorCode::kIoError, target.string() + ": demo directory does not exist");
  }
  fs::path staging = target;
  staging += ".staging." + std::to_string(::getpid());
  std::error_code ec;
  fs::remove_all(staging, ec);
  SaveDemo(demo, staging);
  if (::renameat2(AT_FDCWD, staging.c_str(), AT_FDCWD, target.c_str(), RENAME_EXCHANGE) != 0) {
    // Filesystems without exchange support: per-file atomic replacement.
    for (const char* f : {"rgb.png", "height.png", "masks.png", "demo.json"}) {
      fs::rename(staging / f, target / f, ec);
      if (ec) Fail(ErrorCode::kIoError, "cannot commit " + (target / f).string() + ": " + ec.message());
    }
  }
  fs::remove_all(staging, ec);
}

DemoDataset LoadDataset(const fs::path& dir) {
  const fs::path manifest_path = dir / kManifestFile;
  if (!fs::exists(manifest_path)) {
    Fail(ErrorCode::kFormatError, dir.string() + ": missing dataset.json");
  }
  const std::string what = manifest_path.string();
  const Json j = internal::ParseJson(ReadFileText(manifest_path), what);
  DemoDataset ds;
  ds.manifest.format_version = Get<int>(j, "format_version", what);
  if (ds.manifest.format_version != Manifest::kFormatVersion) {
    Fail(ErrorCode::kFormatError, what + ": unsupported format_version");
  }
  ds.manifest.ids = Get<std::vector<std::string>>(j, "ids", what);
  ds.manifest.task_names = GetOr<std::vector<std::string>>(j, "task_names", {}, what);
  ds.manifest.seeds = GetOr<std::vector<std::uint64_t>>(j, "seeds", {}, what);
  ds.manifest.config_digest = GetOr<std::string>(j, "config_digest", "", what);
  const auto count = Get<std::size_t>(j, "count", what);
  if (count != ds.manifest.ids.size()) {
    Fail(ErrorCode::kFormatError, what + ": count does not match ids");
  }
  for (const auto& id : ds.manifest.ids) {
    if (!fs::is_directory(dir / id)) {
      Fail(ErrorCode::kFormatError, what + ": missing demo directory '" + id + "'");
    }
    Demo demo = LoadDemo(dir / id);
    if (demo.id != id) Fail(ErrorCode::kFormatError, what + ": demo id mismatch for " + id);
    ds.demos.push_back(std::move(demo));
  }
  return ds;
}

std::string DatasetDigest(const DemoDataset& dataset) {
  Sha256 h;
  Manifest m = dataset.manifest;
  m.ids.clear();
  for (const auto& d : dataset.demos) m.ids.push_back(d.id);
  h.update(ManifestToJson(m).dump());
  for (const auto& d : dataset.demos) {
    h.update(DemoToJson(d).dump());
    h.update(d.obs.rgb.data());
    const auto mm = HeightsToMillimeters(d.obs.heightmap);
    for (std::uint16_t v : mm.data()) {
      const std::uint8_t le[2] = {static_cast<std::uint8_t>(v & 0xFF),
                                  static_cast<std::uint8_t>(v >> 8)};
      h.update(std::span<const std::uint8_t>(le, 2));
    }
    h.update(EncodeMaskIndices(d.masks).data());
  }
  return h.hex_digest();
}

}  // namespace sceneaug
