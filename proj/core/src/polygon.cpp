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

#include "sceneaug/polygon.hpp"

#include <algorithm>

namespace sceneaug {

Bitmap RasterizePolygon(const std::vector<Pixel>& polygon, int width, int height) {
  if (polygon.size() < 3) Fail(ErrorCode::kInvalidArgument, "polygon needs at least 3 vertices");
  Bitmap mask = MakeBitmap(width, height);
  const std::size_t n = polygon.size();
  std::vector<double> crossings;
  for (int v = 0; v < height; ++v) {
    crossings.clear();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      const double xi = polygon[i].u, yi = polygon[i].v;
      const double xj = polygon[j].u, yj = polygon[j].v;
      if ((yi > v) != (yj > v)) crossings.push_back((xj - xi) * (v - yi) / (yj - yi) + xi);
    }
    std::sort(crossings.begin(), crossings.end());
    // A point is inside when an odd number of crossings lie strictly to its right.
    std::size_t right = crossings.size();
    std::size_t k = 0;
    for (int u = 0; u < width; ++u) {
      while (k < crossings.size() && !(u < crossings[k])) {
        ++k;
        --right;
      }
      mask.at(u, v) = right % 2 == 1 ? 1 : 0;
    }
  }
  return mask;
}

}  // namespace sceneaug
