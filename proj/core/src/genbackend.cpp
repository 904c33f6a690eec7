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

#include "sceneaug/genbackend.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <regex>

#include "sceneaug/random.hpp"
#include "sceneaug/remote_backend.hpp"

namespace sceneaug {

void GenRequest::validate() const {
  if (rgb.channels() != 3 || height.channels() != 1 || region_mask.channels() != 1) {
    Fail(ErrorCode::kInvalidArgument, "request images have wrong channel counts");
  }
  if (!rgb.same_extent(height) || !rgb.same_extent(region_mask)) {
    Fail(ErrorCode::kDimMismatch, "request images differ in size");
  }
  if (!AnySet(region_mask)) Fail(ErrorCode::kInvalidArgument, "region mask is empty");
  if (prompt.empty()) Fail(ErrorCode::kInvalidArgument, "prompt is empty");
  if (!(cell_size_m > 0.0)) Fail(ErrorCode::kInvalidArgument, "cell size must be positive");
}

void BackendConfig::validate() const {
  if (kind == Kind::kProcedural) return;
  static const std::regex kUrl(R"(^http://[A-Za-z0-9.\-]+(:[0-9]{1,5})?(/[^\s]*)?$)");
  if (!std::regex_match(remote.url, kUrl)) {
    Fail(ErrorCode::kInvalidArgument, "remote url must look like http://host[:port][/path]");
  }
  if (!(remote.timeout_s > 0.0)) Fail(ErrorCode::kInvalidArgument, "timeout_s must be positive");
  if (remote.max_retries < 0) Fail(ErrorCode::kInvalidArgument, "max_retries must be >= 0");
  if (remote.max_in_flight < 1) Fail(ErrorCode::kInvalidArgument, "max_in_flight must be >= 1");
  if (remote.backoff_base_s < 0.0) Fail(ErrorCode::kInvalidArgument, "backoff must be >= 0");
}

RgbImage Composite(const RgbImage& original, const RgbImage& generated, const Bitmap& mask) {
  if (!original.same_shape(generated) || !original.same_extent(mask) || mask.channels() != 1) {
    Fail(ErrorCode::kDimMismatch, "composite inputs differ in size");
  }
  RgbImage out = original;
  const int ch = original.channels();
  for (std::size_t i = 0; i < mask.pixel_count(); ++i) {
    if (!mask.data()[i]) continue;
    for (int c = 0; c < ch; ++c) out.data()[i * ch + c] = generated.data()[i * ch + c];
  }
  return out;
}

GenResult Generate(GenerationBackend& backend, const GenRequest& request) {
  request.validate();
  GenResult raw = backend.GenerateRaw(request);
  if (!raw.rgb.same_shape(request.rgb)) {
    Fail(ErrorCode::kRemoteProtocolError, std::string(backend.name()) +
                                              " backend returned an image of the wrong size");
  }
  return {Composite(request.rgb, raw.rgb, request.region_mask)};
}

std::unique_ptr<GenerationBackend> MakeBackend(const BackendConfig& config) {
  config.validate();
  if (config.kind == BackendConfig::Kind::kRemote) {
    return std::make_unique<RemoteBackend>(config.remote);
  }
  return std::make_unique<ProceduralBackend>();
}

const std::vector<NamedColor>& ColorVocabulary() {
  static const std::vector<NamedColor> kColors = {
      {"red", {0.80f, 0.12f, 0.10f}},    {"green", {0.15f, 0.62f, 0.20f}},
      {"yellow", {0.92f, 0.82f, 0.15f}}, {"blue", {0.12f, 0.25f, 0.80f}},
      {"white", {0.92f, 0.92f, 0.90f}},  {"black", {0.08f, 0.08f, 0.08f}},
      {"orange", {0.95f, 0.50f, 0.10f}}, {"purple", {0.50f, 0.20f, 0.65f}},
      {"brown", {0.45f, 0.28f, 0.14f}},  {"pink", {0.95f, 0.55f, 0.70f}},
  };
  return kColors;
}

const std::vector<std::string_view>& MaterialVocabulary() {
  static const std::vector<std::string_view> kMaterials = {"glass", "marble", "wood",
                                                          "metal", "plastic", "fabric"};
  return kMaterials;
}

namespace {

std::vector<std::string> Words(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  for (char ch : text) {
    if (std::isalpha(static_cast<unsigned char>(ch))) {
      current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    } else if (!current.empty()) {
      words.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

}  // namespace

std::optional<NamedColor> FindColor(std::string_view prompt) {
  for (const auto& word : Words(prompt)) {
    for (const auto& color : ColorVocabulary()) {
      if (word == color.name) return color;
    }
  }
  return std::nullopt;
}

std::optional<std::string_view> FindMaterial(std::string_view prompt) {
  for (const auto& word : Words(prompt)) {
    for (std::string_view m : MaterialVocabulary()) {
      if (word.starts_with(m)) return m;
    }
  }
  return std::nullopt;
}

namespace {

// Value noise on an integer lattice, bilinearly interpolated.
class ValueNoise {
 public:
  explicit ValueNoise(std::uint64_t seed) : seed_(seed) {}

  double operator()(double x, double y) const {
    const double fx = std::floor(x);
    const double fy = std::floor(y);
    const auto ix = static_cast<std::int64_t>(fx);
    const auto iy = static_cast<std::int64_t>(fy);
    const double tx = x - fx;
    const double ty = y - fy;
    const double v00 = lattice(ix, iy);
    const double v10 = lattice(ix + 1, iy);
    const double v01 = lattice(ix, iy + 1);
    const double v11 = lattice(ix + 1, iy + 1);
    const double top = v00 + (v10 - v00) * tx;
    const double bottom = v01 + (v11 - v01) * tx;
    return top + (bottom - top) * ty;
  }

 private:
  double lattice(std::int64_t i, std::int64_t j) const {
    const std::uint64_t h = Mix64(seed_ ^ Mix64(static_cast<std::uint64_t>(i) * 0x9E3779B97F4A7C15ULL) ^
                                  Mix64(static_cast<std::uint64_t>(j) * 0xC2B2AE3D27D4EB4FULL + 1));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
  }

  std::uint64_t seed_;
};

enum class Pattern { kNoise, kWood, kMarble };

struct MaterialStyle {
  Pattern pattern = Pattern::kNoise;
  double amplitude = 0.15;
  double spacing_u = 12.0;  // lattice spacing in pixels
  double spacing_v = 12.0;
};

MaterialStyle StyleFor(std::optional<std::string_view> material) {
  if (!material) return {};
  if (*material == "wood") return {Pattern::kWood, 0.22, 40.0, 4.0};
  if (*material == "marble") return {Pattern::kMarble, 0.30, 32.0, 32.0};
  if (*material == "glass") return {Pattern::kNoise, 0.04, 28.0, 28.0};
  if (*material == "metal") return {Pattern::kNoise, 0.08, 16.0, 1.5};
  if (*material == "plastic") return {Pattern::kNoise, 0.06, 16.0, 16.0};
  if (*material == "fabric") return {Pattern::kNoise, 0.20, 2.0, 2.0};
  return {};
}

std::array<float, 3> HueColor(std::uint64_t hash) {
  const double hue = static_cast<double>(hash >> 11) * 0x1.0p-53 * 6.0;
  const double s = 0.55;
  const double v = 0.75;
  const double c = v * s;
  const double x = c * (1.0 - std::abs(std::fmod(hue, 2.0) - 1.0));
  const double m = v - c;
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(hue) % 6) {
    case 0: r = c; g = x; break;
    case 1: r = x; g = c; break;
    case 2: g = c; b = x; break;
    case 3: g = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  return {static_cast<float>(r + m), static_cast<float>(g + m), static_cast<float>(b + m)};
}

}  // namespace

GenResult ProceduralBackend::GenerateRaw(const GenRequest& request) {
  request.validate();
  const std::uint64_t key = DeriveSeed(HashString(request.prompt), {request.seed});
  const auto color = FindColor(request.prompt);
  const std::array<float, 3> base = color ? color->rgb : HueColor(Mix64(key ^ 0x5bd1e995ULL));
  const MaterialStyle style = StyleFor(FindMaterial(request.prompt));
  const ValueNoise octave1(DeriveSeed(key, {1}));
  const ValueNoise octave2(DeriveSeed(key, {2}));
  // Random lattice offset so equal prompts with different seeds decorrelate.
  Rng offsets(DeriveSeed(key, {3}));
  const double off_u = offsets.uniform(0.0, 1024.0);
  const double off_v = offsets.uniform(0.0, 1024.0);

  const double norm = std::sqrt(6.0);
  const double lx = -1.0 / norm, ly = -1.0 / norm, lz = 2.0 / norm;
  constexpr double kAmbient = 0.4;

  const int w = request.rgb.width();
  const int h = request.rgb.height();
  GenResult out{request.rgb};
  for (int v = 0; v < h; ++v) {
    for (int u = 0; u < w; ++u) {
      if (!request.region_mask.at(u, v)) continue;
      const double su = (u + off_u) / style.spacing_u;
      const double sv = (v + off_v) / style.spacing_v;
      double tex = 0.0;
      switch (style.pattern) {
        case Pattern::kNoise:
          tex = (octave1(su, sv) - 0.5) + 0.5 * (octave2(2 * su, 2 * sv) - 0.5);
          break;
        case Pattern::kWood: {
          const double n = octave1(su, sv) + 0.5 * octave2(2 * su, 2 * sv);
          tex = 0.5 * std::sin(2.0 * std::numbers::pi * (sv / 1.75 + 1.5 * n));
          break;
        }
        case Pattern::kMarble: {
          const double n = octave1(su, sv) + 0.5 * octave2(2 * su, 2 * sv);
          const double vein = std::abs(std::sin(std::numbers::pi * (su + sv + 4.0 * n)));
          tex = 0.5 - std::pow(vein, 0.25);
          break;
        }
      }

      const int ul = std::max(u - 1, 0), ur = std::min(u + 1, w - 1);
      const int vu = std::max(v - 1, 0), vd = std::min(v + 1, h - 1);
      const double dhdx = ur > ul ? (request.height.at(ur, v) - request.height.at(ul, v)) /
                                        ((ur - ul) * request.cell_size_m)
                                  : 0.0;
      const double dhdy = vd > vu ? (request.height.at(u, vd) - request.height.at(u, vu)) /
                                        ((vd - vu) * request.cell_size_m)
                                  : 0.0;
      const double nlen = std::sqrt(dhdx * dhdx + dhdy * dhdy + 1.0);
      const double ndotl = (-dhdx * lx - dhdy * ly + lz) / nlen;
      const double shade = kAmbient + (1.0 - kAmbient) * std::max(0.0, ndotl);

      const double modulation = (1.0 + 2.0 * style.amplitude * tex) * shade;
      for (int c = 0; c < 3; ++c) {
        const double value = std::clamp(base[c] * modulation, 0.0, 1.0);
        out.rgb.at(u, v, c) = static_cast<std::uint8_t>(std::lround(value * 255.0));
      }
    }
  }
  return out;
}

}  // namespace sceneaug
