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

#ifndef SCENEAUG_GENBACKEND_HPP_
#define SCENEAUG_GENBACKEND_HPP_

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sceneaug/image.hpp"

namespace sceneaug {

/// Depth-guided generation request: regenerate `region_mask` of `rgb`
/// conditioned on `prompt`, the noise seed and the height map.
struct GenRequest {
  RgbImage rgb;
  HeightMap height;
  Bitmap region_mask;
  std::string prompt;
  std::uint64_t seed = 0;
  double cell_size_m = 1.0 / 500.0;  // used for surface normals

  /// Throws InvalidArgument / DimMismatch.
  void validate() const;
};

struct GenResult {
  RgbImage rgb;
};

struct RemoteBackendConfig {
  std::string url;  // http://host[:port][/prefix]
  double timeout_s = 30.0;
  int max_retries = 3;
  int max_in_flight = 4;
  double backoff_base_s = 0.5;  // sleep backoff_base_s * 2^attempt
};

struct BackendConfig {
  enum class Kind { kProcedural, kRemote };
  Kind kind = Kind::kProcedural;
  RemoteBackendConfig remote;

  void validate() const;
};

/// A generator of raw images. Implementations may write anywhere; callers go
/// through `Generate`, which composites so only the region can change.
class GenerationBackend {
 public:
  virtual ~GenerationBackend() = default;
  virtual GenResult GenerateRaw(const GenRequest& request) = 0;
  virtual std::string_view name() const = 0;
};

/// Validates the request, runs the backend, checks the result size and
/// composites. Pixels outside `region_mask` are byte-identical to the input.
GenResult Generate(GenerationBackend& backend, const GenRequest& request);

/// out[p] = generated[p] where mask[p], original[p] elsewhere.
RgbImage Composite(const RgbImage& original, const RgbImage& generated, const Bitmap& mask);

std::unique_ptr<GenerationBackend> MakeBackend(const BackendConfig& config);

// Prompt vocabulary understood by the procedural generator.
struct NamedColor {
  std::string_view name;
  std::array<float, 3> rgb;  // linear 0..1
};
const std::vector<NamedColor>& ColorVocabulary();
const std::vector<std::string_view>& MaterialVocabulary();

/// First color word in the prompt, if any.
std::optional<NamedColor> FindColor(std::string_view prompt);
/// First material word in the prompt, matched by prefix ("wooden" -> wood).
std::optional<std::string_view> FindMaterial(std::string_view prompt);

/// Deterministic stand-in generator: prompt color (or a hashed hue), a
/// two-octave value-noise texture shaped by the material word, and
/// Lambertian shading from height-map normals.
class ProceduralBackend final : public GenerationBackend {
 public:
  GenResult GenerateRaw(const GenRequest& request) override;
  std::string_view name() const override { return "procedural"; }
};

}  // namespace sceneaug

#endif  // SCENEAUG_GENBACKEND_HPP_
