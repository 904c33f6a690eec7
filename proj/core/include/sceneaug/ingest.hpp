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

#ifndef SCENEAUG_INGEST_HPP_
#define SCENEAUG_INGEST_HPP_

#include <filesystem>
#include <string>

#include "sceneaug/geometry.hpp"
#include "sceneaug/scene.hpp"

namespace sceneaug {

/// Reads one capture directory holding rgb.png, depth16mm.png (uint16 millimeters,
/// 0 = invalid) and camera.json:
///   {"fx", "fy", "cx", "cy", "width", "height",
///    "rotation": [9 numbers, row-major camera-to-world],
///    "translation": [x, y, z]}
RgbdFrame LoadCapture(const std::filesystem::path& dir);

/// One unannotated demo per capture subdirectory (sorted by name), id = directory name.
DemoDataset IngestCaptures(const std::filesystem::path& captures_dir, const TopDownConfig& config,
                           const std::string& task_text);

/// Writes `frame` in the capture layout read by LoadCapture.
void SaveCapture(const RgbdFrame& frame, const std::filesystem::path& dir);

}  // namespace sceneaug

#endif  // SCENEAUG_INGEST_HPP_
