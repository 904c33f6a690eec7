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

#ifndef SCENEAUG_POLYGON_HPP_
#define SCENEAUG_POLYGON_HPP_

#include <vector>

#include "sceneaug/image.hpp"

namespace sceneaug {

/// Even-odd fill of a polygon with integer vertices given in pixel coordinates.
/// Pixel (u, v) is tested at the point (u, v); self-intersecting outlines are
/// allowed. Throws InvalidArgument for fewer than three vertices.
Bitmap RasterizePolygon(const std::vector<Pixel>& polygon, int width, int height);

}  // namespace sceneaug

#endif  // SCENEAUG_POLYGON_HPP_
