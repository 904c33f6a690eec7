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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sceneaug/augment.hpp"
#include "sceneaug/codec.hpp"

namespace sceneaug {

namespace {

constexpr std::string_view kBaselineNames[] = {"copy_paste", "random_background",
                                               "random_distractors", "spatial"};

// Cutouts are authored at 500 px/m; rescale to the scene resolution.
RgbaImage ResizeNearest(const RgbaImage& src, int w, int h) {
  w = std::max(w, 1);
  h = std::max(h, 1);
  RgbaImage out(w, h, src.channels());
  for (int v = 0; v < h; ++v) {
    const int sv = std::min(src.height() - 1, v * src.height() / h);
    for (int u = 0; u < w; ++u) {
      const int su = std::min(src.width() - 1, u * src.width() / w);
      for (int c = 0; c < src.channels(); ++c) out.at(u, v, c) = src.at(su, sv, c);
    }
  }
  return out;
}

RgbaImage NativeSize(const RgbaImage& cutout, const TopDownConfig& config) {
  const double f = config.resolution / 500.0;
  return ResizeNearest(cutout, static_cast<int>(std::lround(cutout.width() * f)),
                       static_cast<int>(std::lround(cutout.height() * f)));
}

// Alpha-composites `cutout` with its top-left corner at (u0, v0). Opaque pixels
// (alpha >= 128) are taken away from every existing mask and become a new distractor.
void Paste(Demo& demo, const RgbaImage& cutout, int u0, int v0) {
  Bitmap covered = MakeBitmap(demo.obs.width(), demo.obs.height());
  for (int v = 0; v < cutout.height(); ++v) {
    for (int u = 0; u < cutout.width(); ++u) {
      const int x = u0 + u, y = v0 + v;
      if (!demo.obs.rgb.contains(x, y)) continue;
      const int a = cutout.at(u, v, 3);
      if (a == 0) continue;
      for (int c = 0; c < 3; ++c) {
        const int o = demo.obs.rgb.at(x, y, c);
        demo.obs.rgb.at(x, y, c) =
            static_cast<std::uint8_t>((a * cutout.at(u, v, c) + (255 - a) * o + 127) / 255);
      }
      if (a >= 128) covered.at(x, y) = 1;
    }
  }
  if (!AnySet(covered)) return;
  auto remove = [&](Bitmap& m) {
    for (std::size_t i = 0; i < m.data().size(); ++i) {
      if (covered.data()[i]) m.data()[i] = 0;
    }
  };
  remove(demo.masks.pick_object);
  remove(demo.masks.place_target);
  std::vector<Bitmap> kept;
  for (Bitmap d : demo.masks.distractors) {
    remove(d);
    if (AnySet(d)) kept.push_back(std::move(d));
  }
  kept.push_back(std::move(covered));
  demo.masks.distractors = std::move(kept);
}

}  // namespace

std::string_view ToString(BaselineKind kind) { return kBaselineNames[static_cast<int>(kind)]; }

BaselineKind BaselineKindFromString(std::string_view s) {
  for (int k = 0; k < 4; ++k) {
    if (kBaselineNames[k] == s) return static_cast<BaselineKind>(k);
  }
  Fail(ErrorCode::kInvalidArgument, "unknown baseline '" + std::string(s) + "'");
}

Demo BaselineCopyPaste(const Demo& demo, const RgbaImage& cutout, Rng& rng) {
  if (cutout.empty() || cutout.channels() != 4) {
    Fail(ErrorCode::kInvalidArgument, "copy-paste needs an RGBA cutout");
  }
  Demo out = demo;
  const int anchor = static_cast<int>(rng.uniform_int(0, 2));
  const Bitmap* target = anchor == 1 ? &demo.masks.pick_object
                         : anchor == 2 ? &demo.masks.place_target
                                       : nullptr;
  if (target && AnySet(*target)) {
    // Replace the object: cover its box, slightly enlarged.
    const BoundingBox b = MaskBounds(*target);
    const double grow = rng.uniform(1.0, 1.3);
    const int w = static_cast<int>(std::lround((b.u_max - b.u_min + 1) * grow));
    const int h = static_cast<int>(std::lround((b.v_max - b.v_min + 1) * grow));
    const Centroid c = MaskCentroid(*target);
    const RgbaImage sized = ResizeNearest(cutout, w, h);
    Paste(out, sized, static_cast<int>(std::lround(c.u - (sized.width() - 1) / 2.0)),
          static_cast<int>(std::lround(c.v - (sized.height() - 1) / 2.0)));
  } else {
    const RgbaImage sized = NativeSize(cutout, demo.obs.config);
    const int u = static_cast<int>(rng.uniform_int(-sized.width() / 2, demo.obs.width() - 1 - sized.width() / 2));
    const int v = static_cast<int>(rng.uniform_int(-sized.height() / 2, demo.obs.height() - 1 - sized.height() / 2));
    Paste(out, sized, u, v);
  }
  return out;
}

Demo BaselineRandomBackground(const Demo& demo, const RgbImage& image) {
  if (image.empty() || image.channels() != 3) {
    Fail(ErrorCode::kInvalidArgument, "random background needs an RGB image");
  }
  Demo out = demo;
  const Bitmap region = demo.masks.background();
  const int w = demo.obs.width(), h = demo.obs.height();
  for (int v = 0; v < h; ++v) {
    const int sv = std::min(image.height() - 1, v * image.height() / h);
    for (int u = 0; u < w; ++u) {
      if (!region.at(u, v)) continue;
      const int su = std::min(image.width() - 1, u * image.width() / w);
      for (int c = 0; c < 3; ++c) out.obs.rgb.at(u, v, c) = image.at(su, sv, c);
    }
  }
  return out;
}

Demo BaselineRandomDistractors(const Demo& demo, const std::vector<RgbaImage>& cutouts, Rng& rng) {
  if (cutouts.empty()) Fail(ErrorCode::kEmptyCorpus, "cutout corpus is empty");
  Demo out = demo;
  const auto n = rng.uniform_int(1, 3);
  for (std::int64_t i = 0; i < n; ++i) {
    const auto& cutout =
        cutouts[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(cutouts.size()) - 1))];
    const RgbaImage sized = NativeSize(cutout, demo.obs.config);
    const int u = static_cast<int>(rng.uniform_int(-sized.width() / 2, demo.obs.width() - 1 - sized.width() / 2));
    const int v = static_cast<int>(rng.uniform_int(-sized.height() / 2, demo.obs.height() - 1 - sized.height() / 2));
    Paste(out, sized, u, v);
  }
  return out;
}

namespace {

struct Rigid {
  double cos_a, sin_a, shift_u, shift_v, cu, cv;

  // Destination cell -> source cell under nearest-neighbor sampling.
  Pixel source(int u, int v) const {
    const double x = u + 0.5 - cu - shift_u;
    const double y = v + 0.5 - cv - shift_v;
    const double sx = cos_a * x + sin_a * y + cu;
    const double sy = -sin_a * x + cos_a * y + cv;
    return {static_cast<int>(std::floor(sx)), static_cast<int>(std::floor(sy))};
  }

  // Destination cell showing source cell `p`, searched around the forward image.
  std::optional<Pixel> destination(Pixel p, int w, int h) const {
    const double x = p.u + 0.5 - cu, y = p.v + 0.5 - cv;
    const double dx = cos_a * x - sin_a * y + cu + shift_u;
    const double dy = sin_a * x + cos_a * y + cv + shift_v;
    const int bu = static_cast<int>(std::floor(dx)), bv = static_cast<int>(std::floor(dy));
    std::optional<Pixel> best;
    double best_d = 0.0;
    for (int v = bv - 1; v <= bv + 1; ++v) {
      for (int u = bu - 1; u <= bu + 1; ++u) {
        if (u < 0 || v < 0 || u >= w || v >= h || !(source(u, v) == p)) continue;
        const double d = (u + 0.5 - dx) * (u + 0.5 - dx) + (v + 0.5 - dy) * (v + 0.5 - dy);
        if (!best || d < best_d) {
          best = Pixel{u, v};
          best_d = d;
        }
      }
    }
    return best;
  }
};

template <typename T>
Image<T> Resample(const Image<T>& src, const Rigid& t) {
  Image<T> out(src.width(), src.height(), src.channels());
  for (int v = 0; v < src.height(); ++v) {
    for (int u = 0; u < src.width(); ++u) {
      const Pixel s = t.source(u, v);
      if (!src.contains(s)) continue;
      for (int c = 0; c < src.channels(); ++c) out.at(u, v, c) = src.at(s, c);
    }
  }
  return out;
}

Rigid MakeRigid(const Demo& demo, double angle, double shift_u, double shift_v) {
  return {std::cos(angle), std::sin(angle), shift_u, shift_v, demo.obs.width() / 2.0,
          demo.obs.height() / 2.0};
}

std::optional<Demo> TryRigid(const Demo& demo, double angle, double shift_u, double shift_v) {
  const Rigid t = MakeRigid(demo, angle, shift_u, shift_v);
  Demo out = demo;
  if (demo.action) {
    const auto pick = t.destination(demo.action->pick, demo.obs.width(), demo.obs.height());
    const auto place = t.destination(demo.action->place, demo.obs.width(), demo.obs.height());
    if (!pick || !place) return std::nullopt;
    out.action = PickPlaceAction{*pick, *place};
  }
  out.obs.rgb = Resample(demo.obs.rgb, t);
  out.obs.heightmap = Resample(demo.obs.heightmap, t);
  out.masks.pick_object = Resample(demo.masks.pick_object, t);
  out.masks.place_target = Resample(demo.masks.place_target, t);
  std::vector<Bitmap> kept;
  for (const auto& d : demo.masks.distractors) {
    Bitmap r = Resample(d, t);
    if (AnySet(r)) kept.push_back(std::move(r));
  }
  out.masks.distractors = std::move(kept);
  return out;
}

}  // namespace

Demo ApplyRigidTransform(const Demo& demo, double angle, double shift_u, double shift_v) {
  if (auto out = TryRigid(demo, angle, shift_u, shift_v)) return *out;
  Fail(ErrorCode::kOutOfBounds, "transform moves an action pixel out of the image");
}

Demo BaselineSpatial(const Demo& demo, Rng& rng) {
  const double w = demo.obs.width(), h = demo.obs.height();
  for (int attempt = 0; attempt < 100; ++attempt) {
    const double angle = rng.uniform(-std::numbers::pi, std::numbers::pi);
    const double su = std::round(rng.uniform(-w / 2, w / 2));
    const double sv = std::round(rng.uniform(-h / 2, h / 2));
    auto out = TryRigid(demo, angle, su, sv);
    if (out && ValidateDemo(*out).empty()) return *out;
  }
  return demo;
}

}  // namespace sceneaug
