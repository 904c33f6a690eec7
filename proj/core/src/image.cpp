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

#include "sceneaug/image.hpp"

#include <algorithm>

namespace sceneaug {

std::size_t CountSet(const Bitmap& mask) {
  return static_cast<std::size_t>(std::count_if(
      mask.data().begin(), mask.data().end(), [](std::uint8_t b) { return b != 0; }));
}

bool AnySet(const Bitmap& mask) {
  return std::any_of(mask.data().begin(), mask.data().end(),
                     [](std::uint8_t b) { return b != 0; });
}

bool Intersects(const Bitmap& a, const Bitmap& b) {
  if (!a.same_shape(b)) Fail(ErrorCode::kDimMismatch, "mask shapes differ");
  auto da = a.data();
  auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) {
    if (da[i] && db[i]) return true;
  }
  return false;
}

Bitmap Union(const Bitmap& a, const Bitmap& b) {
  if (!a.same_shape(b)) Fail(ErrorCode::kDimMismatch, "mask shapes differ");
  Bitmap out = a;
  auto dout = out.data();
  auto db = b.data();
  for (std::size_t i = 0; i < dout.size(); ++i) dout[i] = (dout[i] || db[i]) ? 1 : 0;
  return out;
}

Bitmap Complement(const Bitmap& mask) {
  Bitmap out = mask;
  for (auto& b : out.data()) b = b ? 0 : 1;
  return out;
}

BoundingBox MaskBounds(const Bitmap& mask) {
  BoundingBox box{mask.width(), mask.height(), -1, -1};
  for (int v = 0; v < mask.height(); ++v) {
    for (int u = 0; u < mask.width(); ++u) {
      if (!mask.at(u, v)) continue;
      box.u_min = std::min(box.u_min, u);
      box.v_min = std::min(box.v_min, v);
      box.u_max = std::max(box.u_max, u);
      box.v_max = std::max(box.v_max, v);
    }
  }
  if (box.u_max < 0) return BoundingBox{};
  return box;
}

Centroid MaskCentroid(const Bitmap& mask) {
  double su = 0.0;
  double sv = 0.0;
  std::size_t n = 0;
  for (int v = 0; v < mask.height(); ++v) {
    for (int u = 0; u < mask.width(); ++u) {
      if (!mask.at(u, v)) continue;
      su += u;
      sv += v;
      ++n;
    }
  }
  if (n == 0) Fail(ErrorCode::kInvalidArgument, "centroid of empty mask");
  return {su / static_cast<double>(n), sv / static_cast<double>(n)};
}

}  // namespace sceneaug
