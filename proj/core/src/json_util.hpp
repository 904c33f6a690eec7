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

#ifndef SCENEAUG_SRC_JSON_UTIL_HPP_
#define SCENEAUG_SRC_JSON_UTIL_HPP_

// Private JSON helpers; the public headers do not depend on nlohmann/json.

#include <json.hpp>
#include <string>

#include "sceneaug/error.hpp"
#include "sceneaug/geometry.hpp"
#include "sceneaug/scene.hpp"

namespace sceneaug::internal {

using Json = nlohmann::json;

inline Json ParseJson(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    Fail(ErrorCode::kFormatError, what + ": " + e.what());
  }
}

/// Reads a required field, mapping type errors to FormatError.
template <typename T>
T Get(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) {
    Fail(ErrorCode::kFormatError, what + ": missing field '" + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    Fail(ErrorCode::kFormatError, what + ": bad field '" + key + "': " + e.what());
  }
}

template <typename T>
T GetOr(const Json& j, const char* key, T fallback, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) return fallback;
  return Get<T>(j, key, what);
}

inline Json ToJson(const TopDownConfig& c) {
  return Json{{"x_min", c.x_min},           {"x_max", c.x_max},
              {"y_min", c.y_min},           {"y_max", c.y_max},
              {"resolution", c.resolution}, {"table_height", c.table_height}};
}

inline TopDownConfig TopDownConfigFromJson(const Json& j, const std::string& what) {
  TopDownConfig c;
  c.x_min = GetOr<double>(j, "x_min", c.x_min, what);
  c.x_max = GetOr<double>(j, "x_max", c.x_max, what);
  c.y_min = GetOr<double>(j, "y_min", c.y_min, what);
  c.y_max = GetOr<double>(j, "y_max", c.y_max, what);
  c.resolution = GetOr<double>(j, "resolution", c.resolution, what);
  c.table_height = GetOr<double>(j, "table_height", c.table_height, what);
  return c;
}

inline Json ToJson(Pixel p) { return Json::array({p.u, p.v}); }

inline Pixel PixelFromJson(const Json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    Fail(ErrorCode::kFormatError, what + ": expected [u, v] integer pair");
  }
  return {j[0].get<int>(), j[1].get<int>()};
}

}  // namespace sceneaug::internal

#endif  // SCENEAUG_SRC_JSON_UTIL_HPP_
