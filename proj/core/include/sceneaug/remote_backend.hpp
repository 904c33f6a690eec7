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

#ifndef SCENEAUG_REMOTE_BACKEND_HPP_
#define SCENEAUG_REMOTE_BACKEND_HPP_

#include <condition_variable>
#include <mutex>
#include <string>

#include "sceneaug/genbackend.hpp"

namespace sceneaug {

/// Client for the versioned generation service:
///   POST {url}/generate  {"version": 1, "prompt", "seed", "width", "height",
///                          "rgb_png_b64", "height_mm_png16_b64", "mask_png_b64"}
///   200 -> {"rgb_png_b64"}
/// Transport failures raise RemoteTimeout, anything else RemoteProtocolError,
/// each after `max_retries` retries with exponential backoff. At most
/// `max_in_flight` requests run concurrently per client.
class RemoteBackend final : public GenerationBackend {
 public:
  explicit RemoteBackend(RemoteBackendConfig config);

  GenResult GenerateRaw(const GenRequest& request) override;
  std::string_view name() const override { return "remote"; }

  /// JSON body sent for `request`; exposed for protocol tests.
  static std::string EncodeRequestBody(const GenRequest& request);

 private:
  GenResult Attempt(const std::string& body, const GenRequest& request);

  RemoteBackendConfig config_;
  std::string host_;
  std::string path_prefix_;
  std::mutex mu_;
  std::condition_variable cv_;
  int in_flight_ = 0;
};

}  // namespace sceneaug

#endif  // SCENEAUG_REMOTE_BACKEND_HPP_
