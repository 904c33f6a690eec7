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

#include "sceneaug/remote_backend.hpp"

#include <chrono>
#include <cmath>
#include <thread>

#include "json_util.hpp"
#include "sceneaug/codec.hpp"

// After the Eigen-bearing headers: <resolv.h> defines a `_res` macro.
#include <httplib.h>

namespace sceneaug {

using internal::Json;

RemoteBackend::RemoteBackend(RemoteBackendConfig config) : config_(std::move(config)) {
  BackendConfig check{BackendConfig::Kind::kRemote, config_};
  check.validate();
  // Split "http://host:port/prefix" into the client base and a path prefix.
  const std::size_t scheme_end = config_.url.find("://") + 3;
  const std::size_t slash = config_.url.find('/', scheme_end);
  host_ = config_.url.substr(0, slash);
  path_prefix_ = slash == std::string::npos ? "" : config_.url.substr(slash);
  while (!path_prefix_.empty() && path_prefix_.back() == '/') path_prefix_.pop_back();
}

std::string RemoteBackend::EncodeRequestBody(const GenRequest& request) {
  Image<std::uint16_t> mm(request.height.width(), request.height.height(), 1);
  for (std::size_t i = 0; i < mm.pixel_count(); ++i) {
    mm.data()[i] = HeightToMillimeters(request.height.data()[i]);
  }
  Image<std::uint8_t> mask(request.region_mask.width(), request.region_mask.height(), 1);
  for (std::size_t i = 0; i < mask.pixel_count(); ++i) {
    mask.data()[i] = request.region_mask.data()[i] ? 255 : 0;
  }
  Json body{{"version", 1},
            {"prompt", request.prompt},
            {"seed", request.seed},
            {"width", request.rgb.width()},
            {"height", request.rgb.height()},
            {"rgb_png_b64", Base64Encode(EncodePngRgb(request.rgb))},
            {"height_mm_png16_b64", Base64Encode(EncodePngGray16(mm))},
            {"mask_png_b64", Base64Encode(EncodePngGray8(mask))}};
  return body.dump();
}

GenResult RemoteBackend::Attempt(const std::string& body, const GenRequest& request) {
  httplib::Client client(host_);
  const auto sec = static_cast<time_t>(std::floor(config_.timeout_s));
  const auto usec = static_cast<time_t>((config_.timeout_s - std::floor(config_.timeout_s)) * 1e6);
  client.set_connection_timeout(sec, usec);
  client.set_read_timeout(sec, usec);
  client.set_write_timeout(sec, usec);

  auto res = client.Post(path_prefix_ + "/generate", body, "application/json");
  if (!res) {
    Fail(ErrorCode::kRemoteTimeout,
         "generation service unreachable or timed out: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    Fail(ErrorCode::kRemoteProtocolError,
         "generation service returned HTTP " + std::to_string(res->status));
  }
  Json reply;
  try {
    reply = Json::parse(res->body);
  } catch (const Json::exception&) {
    Fail(ErrorCode::kRemoteProtocolError, "generation service returned malformed JSON");
  }
  if (!reply.is_object() || !reply.contains("rgb_png_b64") || !reply["rgb_png_b64"].is_string()) {
    Fail(ErrorCode::kRemoteProtocolError, "response lacks rgb_png_b64");
  }
  RgbImage rgb;
  try {
    rgb = DecodePngAsRgb(Base64Decode(reply["rgb_png_b64"].get<std::string>()));
  } catch (const Error& e) {
    Fail(ErrorCode::kRemoteProtocolError, std::string("cannot decode response image: ") + e.what());
  }
  if (!rgb.same_shape(request.rgb)) {
    Fail(ErrorCode::kRemoteProtocolError, "response image size differs from request");
  }
  return {std::move(rgb)};
}

GenResult RemoteBackend::GenerateRaw(const GenRequest& request) {
  request.validate();
  const std::string body = EncodeRequestBody(request);

  std::unique_lock<std::mutex> lock(mu_);
  cv_.wait(lock, [&] { return in_flight_ < config_.max_in_flight; });
  ++in_flight_;
  lock.unlock();
  struct Release {
    RemoteBackend* self;
    ~Release() {
      std::lock_guard<std::mutex> guard(self->mu_);
      --self->in_flight_;
      self->cv_.notify_one();
    }
  } release{this};

  for (int attempt = 0;; ++attempt) {
    try {
      return Attempt(body, request);
    } catch (const Error& e) {
      if (attempt >= config_.max_retries) {
        throw Error(e.code(), std::string(e.what()) + " (after " + std::to_string(attempt + 1) +
                                  " attempts)");
      }
    }
    const double delay = config_.backoff_base_s * std::pow(2.0, attempt);
    std::this_thread::sleep_for(std::chrono::duration<double>(delay));
  }
}

}  // namespace sceneaug
