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

#include "sceneaug/ingest.hpp"

#include <algorithm>
#include <cmath>

#include "json_util.hpp"
#include "sceneaug/codec.hpp"

namespace sceneaug {

namespace fs = std::filesystem;
using internal::Get;
using internal::Json;

RgbdFrame LoadCapture(const fs::path& dir) {
  for (const char* f : {"rgb.png", "depth16mm.png", "camera.json"}) {
    if (!fs::exists(dir / f)) Fail(ErrorCode::kIoError, dir.string() + ": missing " + f);
  }
  const std::string what = (dir / "camera.json").string();
  const Json j = internal::ParseJson(ReadFileText(dir / "camera.json"), what);
  const auto rotation = Get<std::vector<double>>(j, "rotation", what);
  const auto translation = Get<std::vector<double>>(j, "translation", what);
  if (rotation.size() != 9 || translation.size() != 3) {
    Fail(ErrorCode::kFormatError, what + ": rotation needs 9 values and translation 3");
  }
  Eigen::Matrix3d r;
  r << rotation[0], rotation[1], rotation[2], rotation[3], rotation[4], rotation[5], rotation[6],
      rotation[7], rotation[8];
  const Eigen::Vector3d t(translation[0], translation[1], translation[2]);

  const auto intrinsics =
      CameraIntrinsics::Make(Get<double>(j, "fx", what), Get<double>(j, "fy", what),
                             Get<double>(j, "cx", what), Get<double>(j, "cy", what),
                             Get<int>(j, "width", what), Get<int>(j, "height", what));
  const auto depth_mm = DecodePngAsGray16(ReadFileBytes(dir / "depth16mm.png"));
  Image<float> depth(depth_mm.width(), depth_mm.height(), 1);
  for (std::size_t i = 0; i < depth_mm.data().size(); ++i) {
    depth.data()[i] = depth_mm.data()[i] / 1000.0f;
  }
  RgbdFrame frame{DecodePngAsRgb(ReadFileBytes(dir / "rgb.png")), std::move(depth), intrinsics,
                  CameraPose::Make(r, t)};
  frame.validate();
  return frame;
}

void SaveCapture(const RgbdFrame& frame, const fs::path& dir) {
  frame.validate();
  fs::create_directories(dir);
  Image<std::uint16_t> mm(frame.depth.width(), frame.depth.height(), 1);
  for (std::size_t i = 0; i < mm.data().size(); ++i) {
    const double d = std::round(frame.depth.data()[i] * 1000.0);
    mm.data()[i] = static_cast<std::uint16_t>(std::clamp(d, 0.0, 65535.0));
  }
  const auto& r = frame.pose.rotation();
  const auto& t = frame.pose.translation();
  const Json camera{{"fx", frame.intrinsics.fx()},
                    {"fy", frame.intrinsics.fy()},
                    {"cx", frame.intrinsics.cx()},
                    {"cy", frame.intrinsics.cy()},
                    {"width", frame.intrinsics.width()},
                    {"height", frame.intrinsics.height()},
                    {"rotation", {r(0, 0), r(0, 1), r(0, 2), r(1, 0), r(1, 1), r(1, 2), r(2, 0),
                                  r(2, 1), r(2, 2)}},
                    {"translation", {t.x(), t.y(), t.z()}}};
  WriteFileAtomic(dir / "rgb.png", EncodePngRgb(frame.rgb));
  WriteFileAtomic(dir / "depth16mm.png", EncodePngGray16(mm));
  WriteFileAtomic(dir / "camera.json", camera.dump(2));
}

DemoDataset IngestCaptures(const fs::path& captures_dir, const TopDownConfig& config,
                           const std::string& task_text) {
  if (!fs::is_directory(captures_dir)) {
    Fail(ErrorCode::kIoError, captures_dir.string() + ": not a directory");
  }
  if (task_text.empty()) Fail(ErrorCode::kInvalidArgument, "task text must not be empty");
  std::vector<fs::path> dirs;
  for (const auto& e : fs::directory_iterator(captures_dir)) {
    if (e.is_directory()) dirs.push_back(e.path());
  }
  std::sort(dirs.begin(), dirs.end());
  DemoDataset ds;
  for (const auto& dir : dirs) {
    Demo d;
    d.id = dir.filename().string();
    d.obs = BuildTopDown(LoadCapture(dir), config);
    d.masks = MaskSet::Empty(d.obs.width(), d.obs.height());
    d.task_text = task_text;
    ds.demos.push_back(std::move(d));
  }
  if (ds.demos.empty()) Fail(ErrorCode::kEmptyDataset, captures_dir.string() + ": no captures");
  ds.sync_manifest();
  return ds;
}

}  // namespace sceneaug
