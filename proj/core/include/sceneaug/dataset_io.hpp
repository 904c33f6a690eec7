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

#ifndef SCENEAUG_DATASET_IO_HPP_
#define SCENEAUG_DATASET_IO_HPP_

#include <filesystem>
#include <string>

#include "sceneaug/scene.hpp"

namespace sceneaug {

// On-disk layout (format_version 1):
//   <dir>/dataset.json            manifest, written last
//   <dir>/<id>/rgb.png            8-bit RGB
//   <dir>/<id>/height.png         16-bit gray, millimeters above the table
//   <dir>/<id>/masks.png          8-bit indexed: 0 background, 1 pick,
//                                 2 place, 3+k distractor k
//   <dir>/<id>/demo.json          action, task text, provenance, config

/// Writes into a temporary sibling directory and renames it into place, so
/// readers never see a partial dataset.
void SaveDataset(const DemoDataset& dataset, const std::filesystem::path& dir);
DemoDataset LoadDataset(const std::filesystem::path& dir);

/// Single-demo variants used by the annotation server. SaveDemo replaces
/// each file atomically.
void SaveDemo(const Demo& demo, const std::filesystem::path& demo_dir);
Demo LoadDemo(const std::filesystem::path& demo_dir);

/// Rewrites one demo of a saved dataset. The new directory is staged next to the
/// old one and swapped in with a single rename, so readers see either version.
void ReplaceDemo(const std::filesystem::path& dataset_dir, const Demo& demo);

/// Index image with the role encoding above. Throws InvalidArgument when
/// masks overlap and therefore cannot be encoded.
Image<std::uint8_t> EncodeMaskIndices(const MaskSet& masks);
MaskSet DecodeMaskIndices(const Image<std::uint8_t>& indices, std::size_t distractor_count);

/// SHA-256 over the canonical content of every demo and the manifest.
std::string DatasetDigest(const DemoDataset& dataset);

}  // namespace sceneaug

#endif  // SCENEAUG_DATASET_IO_HPP_
