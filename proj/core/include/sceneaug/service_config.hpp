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

#ifndef SCENEAUG_SERVICE_CONFIG_HPP_
#define SCENEAUG_SERVICE_CONFIG_HPP_

#include <filesystem>
#include <string>

#include "sceneaug/affordance.hpp"
#include "sceneaug/augment.hpp"
#include "sceneaug/genbackend.hpp"
#include "sceneaug/geometry.hpp"

namespace sceneaug {

/// Versioned JSON configuration shared by the command-line tools. Every field is
/// optional in the file; missing fields keep their defaults.
struct ServiceConfig {
  static constexpr int kVersion = 1;

  std::string dataset_dir;
  std::string assets_dir;  // empty = built-in standard library
  BackendConfig backend;
  AugmentConfig augment;
  EvalConfig eval;
  TopDownConfig topdown;
  int listen_port = 8080;

  void validate() const;
  std::string to_json() const;
  /// SHA-256 of the canonical JSON form.
  std::string digest() const;

  static ServiceConfig FromJson(const std::string& text);
  static ServiceConfig Load(const std::filesystem::path& path);
};

}  // namespace sceneaug

#endif  // SCENEAUG_SERVICE_CONFIG_HPP_
