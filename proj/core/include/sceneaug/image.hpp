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

#ifndef SCENEAUG_IMAGE_HPP_
#define SCENEAUG_IMAGE_HPP_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sceneaug/error.hpp"

namespace sceneaug {

/// Integer pixel coordinate: u is the column, v is the row.
struct Pixel {
  int u = 0;
  int v = 0;

  bool operator==(const Pixel&) const = default;
};

/// Dense row-major image with interleaved channels.
template <typename T>
class Image {
 public:
  Image() = default;
  Image(int width, int height, int channels, T fill = T{})
      : width_(width), height_(height), channels_(channels) {
    if (width < 0 || height < 0 || channels <= 0) {
      Fail(ErrorCode::kInvalidArgument, "image dimensions must be non-negative");
    }
    data_.assign(static_cast<std::size_t>(width) * height * channels, fill);
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  std::size_t pixel_count() const noexcept {
    return static_cast<std::size_t>(width_) * height_;
  }
  bool empty() const noexcept { return data_.empty(); }

  bool contains(int u, int v) const noexcept {
    return u >= 0 && v >= 0 && u < width_ && v < height_;
  }
  bool contains(Pixel p) const noexcept { return contains(p.u, p.v); }

  bool same_shape(const Image& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_ &&
           channels_ == other.channels_;
  }
  template <typename U>
  bool same_extent(const Image<U>& other) const noexcept {
    return width_ == other.width() && height_ == other.height();
  }

  T& at(int u, int v, int c = 0) noexcept {
    return data_[index(u, v) + static_cast<std::size_t>(c)];
  }
  const T& at(int u, int v, int c = 0) const noexcept {
    return data_[index(u, v) + static_cast<std::size_t>(c)];
  }
  T& at(Pixel p, int c = 0) noexcept { return at(p.u, p.v, c); }
  const T& at(Pixel p, int c = 0) const noexcept { return at(p.u, p.v, c); }

  std::size_t index(int u, int v) const noexcept {
    return (static_cast<std::size_t>(v) * width_ + u) * channels_;
  }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }

  bool operator==(const Image&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  int channels_ = 1;
  std::vector<T> data_;
};

using RgbImage = Image<std::uint8_t>;   // 3 channels
using RgbaImage = Image<std::uint8_t>;  // 4 channels
using HeightMap = Image<float>;         // 1 channel, meters
using Bitmap = Image<std::uint8_t>;     // 1 channel, values 0/1

inline RgbImage MakeRgb(int width, int height) { return RgbImage(width, height, 3); }
inline HeightMap MakeHeightMap(int width, int height) { return HeightMap(width, height, 1); }
inline Bitmap MakeBitmap(int width, int height) { return Bitmap(width, height, 1); }

std::size_t CountSet(const Bitmap& mask);
bool AnySet(const Bitmap& mask);
/// True when some pixel is set in both masks. Shapes must agree.
bool Intersects(const Bitmap& a, const Bitmap& b);
Bitmap Union(const Bitmap& a, const Bitmap& b);
Bitmap Complement(const Bitmap& mask);

/// Inclusive pixel bounding box. `empty()` when no pixel is set.
struct BoundingBox {
  int u_min = 0;
  int v_min = 0;
  int u_max = -1;
  int v_max = -1;

  bool empty() const noexcept { return u_max < u_min || v_max < v_min; }
  BoundingBox expanded(int margin) const noexcept {
    if (empty()) return *this;
    return {u_min - margin, v_min - margin, u_max + margin, v_max + margin};
  }
  bool intersects(const BoundingBox& o) const noexcept {
    if (empty() || o.empty()) return false;
    return u_min <= o.u_max && o.u_min <= u_max && v_min <= o.v_max &&
           o.v_min <= v_max;
  }
  bool operator==(const BoundingBox&) const = default;
};

BoundingBox MaskBounds(const Bitmap& mask);

/// Mean pixel coordinate of the set pixels.
struct Centroid {
  double u = 0.0;
  double v = 0.0;
};
Centroid MaskCentroid(const Bitmap& mask);

}  // namespace sceneaug

#endif  // SCENEAUG_IMAGE_HPP_
