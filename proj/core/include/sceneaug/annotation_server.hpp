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

#ifndef SCENEAUG_ANNOTATION_SERVER_HPP_
#define SCENEAUG_ANNOTATION_SERVER_HPP_

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "sceneaug/image.hpp"

namespace sceneaug {

inline constexpr const char* kApiHeader = "X-GenAug-API";
inline constexpr const char* kApiVersion = "1";

/// Run-length encoding of a bitmap in row-major order; runs alternate starting
/// with zeros (the first run may be empty).
std::vector<int> EncodeRle(const Bitmap& mask);
Bitmap DecodeRle(const std::vector<int>& runs, int width, int height);

/// REST API over a saved dataset:
///   GET  /api/demos                     list with annotation status
///   GET  /api/demos/{id}                full annotation state
///   GET  /api/demos/{id}/topdown.png    top-down color image
///   POST /api/demos/{id}/action         {"pick": [u, v], "place": [u, v]}
///   POST /api/demos/{id}/mask           {"role": "pick"|"place"|"distractor",
///                                        "polygon": [[u, v], ...]}
/// Errors: 400 malformed input, 404 unknown demo, 409 annotation conflicts.
class AnnotationServer {
 public:
  explicit AnnotationServer(const std::filesystem::path& dataset_dir);
  ~AnnotationServer();
  AnnotationServer(const AnnotationServer&) = delete;
  AnnotationServer& operator=(const AnnotationServer&) = delete;

  /// Returns the bound port; 0 requests an ephemeral port.
  int Bind(const std::string& host, int port);
  /// Blocks until Stop().
  void Serve();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace sceneaug

#endif  // SCENEAUG_ANNOTATION_SERVER_HPP_
