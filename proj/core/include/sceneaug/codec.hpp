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

#ifndef SCENEAUG_CODEC_HPP_
#define SCENEAUG_CODEC_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sceneaug/image.hpp"

namespace sceneaug {

using Bytes = std::vector<std::uint8_t>;

// PNG encoders. Indexed masks use an 8-bit palette image whose pixel values
// are the raw role indices.
Bytes EncodePngRgb(const RgbImage& rgb);
Bytes EncodePngRgba(const RgbaImage& rgba);
Bytes EncodePngGray8(const Image<std::uint8_t>& gray);
Bytes EncodePngGray16(const Image<std::uint16_t>& gray);
Bytes EncodePngIndexed(const Image<std::uint8_t>& indices);

enum class PngKind { kGray8, kGray16, kRgb8, kRgba8, kIndexed8 };

struct DecodedPng {
  PngKind kind = PngKind::kRgb8;
  int width = 0;
  int height = 0;
  // kGray16 samples are stored in `wide`; everything else in `narrow`
  // with channels interleaved (gray 1, rgb 3, rgba 4, indexed 1).
  std::vector<std::uint8_t> narrow;
  std::vector<std::uint16_t> wide;
  // Palette entries (r, g, b) for kIndexed8.
  std::vector<std::uint8_t> palette;
};

/// Throws FormatError for anything that is not a well-formed PNG.
DecodedPng DecodePng(std::span<const std::uint8_t> bytes);

RgbImage DecodePngAsRgb(std::span<const std::uint8_t> bytes);
RgbaImage DecodePngAsRgba(std::span<const std::uint8_t> bytes);
Image<std::uint16_t> DecodePngAsGray16(std::span<const std::uint8_t> bytes);
/// Accepts indexed or 8-bit grayscale PNGs and returns raw sample values.
Image<std::uint8_t> DecodePngAsIndices(std::span<const std::uint8_t> bytes);

std::string Base64Encode(std::span<const std::uint8_t> bytes);
/// Throws FormatError on malformed input.
Bytes Base64Decode(std::string_view text);

/// Lower-case hex SHA-256.
std::string Sha256Hex(std::span<const std::uint8_t> bytes);
std::string Sha256Hex(std::string_view text);

/// Incremental SHA-256 for digests over many buffers.
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  void update(std::span<const std::uint8_t> bytes);
  void update(std::string_view text);
  std::string hex_digest();

 private:
  void* ctx_;
};

Bytes ReadFileBytes(const std::filesystem::path& path);
std::string ReadFileText(const std::filesystem::path& path);
/// Writes to a sibling temporary and renames it over `path`.
void WriteFileAtomic(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void WriteFileAtomic(const std::filesystem::path& path, std::string_view text);

}  // namespace sceneaug

#endif  // SCENEAUG_CODEC_HPP_
