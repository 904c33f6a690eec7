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

#include "sceneaug/service_config.hpp"

#include "json_util.hpp"
#include "sceneaug/codec.hpp"

namespace sceneaug {

using internal::Get;
using internal::GetOr;
using internal::Json;

namespace {

Json BackendToJson(const BackendConfig& b) {
  Json j{{"kind", b.kind == BackendConfig::Kind::kRemote ? "remote" : "procedural"}};
  if (b.kind == BackendConfig::Kind::kRemote) {
    j["url"] = b.remote.url;
    j["timeout_s"] = b.remote.timeout_s;
    j["max_retries"] = b.remote.max_retries;
    j["max_in_flight"] = b.remote.max_in_flight;
    j["backoff_base_s"] = b.remote.backoff_base_s;
  }
  return j;
}

BackendConfig BackendFromJson(const Json& j, const std::string& what) {
  BackendConfig b;
  const std::string kind = GetOr<std::string>(j, "kind", "procedural", what);
  if (kind == "remote") {
    b.kind = BackendConfig::Kind::kRemote;
  } else if (kind != "procedural") {
    Fail(ErrorCode::kFormatError, what + ": unknown backend kind '" + kind + "'");
  }
  b.remote.url = GetOr<std::string>(j, "url", b.remote.url, what);
  b.remote.timeout_s = GetOr<double>(j, "timeout_s", b.remote.timeout_s, what);
  b.remote.max_retries = GetOr<int>(j, "max_retries", b.remote.max_retries, what);
  b.remote.max_in_flight = GetOr<int>(j, "max_in_flight", b.remote.max_in_flight, what);
  b.remote.backoff_base_s = GetOr<double>(j, "backoff_base_s", b.remote.backoff_base_s, what);
  return b;
}

Json AugmentToJson(const AugmentConfig& a) {
  Json probs = Json::object();
  for (int k = 0; k < kOpKindCount; ++k) {
    probs[std::string(ToString(static_cast<OpKind>(k)))] = a.op_probs[k];
  }
  return {{"count", a.count},
          {"op_probs", probs},
          {"distractor_count", {a.distractor_min, a.distractor_max}},
          {"scale_jitter", {a.scale_jitter_lo, a.scale_jitter_hi}},
          {"distractor_extent_m", {a.distractor_extent_lo, a.distractor_extent_hi}},
          {"collision_margin_px", a.collision_margin_px},
          {"max_placement_retries", a.max_placement_retries},
          {"master_seed", a.master_seed},
          {"max_plan_attempts", a.max_plan_attempts},
          {"workers", a.workers}};
}

template <typename T>
void ReadPair(const Json& j, const char* key, T& lo, T& hi, const std::string& what) {
  if (!j.contains(key)) return;
  const auto v = Get<std::vector<T>>(j, key, what);
  if (v.size() != 2) Fail(ErrorCode::kFormatError, what + ": '" + key + "' must be [lo, hi]");
  lo = v[0];
  hi = v[1];
}

AugmentConfig AugmentFromJson(const Json& j, const std::string& what) {
  AugmentConfig a;
  a.count = GetOr<int>(j, "count", a.count, what);
  if (j.contains("op_probs")) {
    const auto probs = Get<std::map<std::string, double>>(j, "op_probs", what);
    for (const auto& [name, p] : probs) {
      OpKind k;
      try {
        k = OpKindFromString(name);
      } catch (const Error& e) {
        Fail(ErrorCode::kFormatError, what + ": " + e.what());
      }
      a.op_probs[static_cast<int>(k)] = p;
    }
  }
  ReadPair(j, "distractor_count", a.distractor_min, a.distractor_max, what);
  ReadPair(j, "scale_jitter", a.scale_jitter_lo, a.scale_jitter_hi, what);
  ReadPair(j, "distractor_extent_m", a.distractor_extent_lo, a.distractor_extent_hi, what);
  a.collision_margin_px = GetOr<int>(j, "collision_margin_px", a.collision_margin_px, what);
  a.max_placement_retries = GetOr<int>(j, "max_placement_retries", a.max_placement_retries, what);
  a.master_seed = GetOr<std::uint64_t>(j, "master_seed", a.master_seed, what);
  a.max_plan_attempts = GetOr<int>(j, "max_plan_attempts", a.max_plan_attempts, what);
  a.workers = GetOr<int>(j, "workers", a.workers, what);
  return a;
}

Json EvalToJson(const EvalConfig& e) {
  Json j{{"success_radius_px", e.success_radius_px}, {"crop_size", e.crop_size}};
  if (e.exclusion_radius_px) j["exclusion_radius_px"] = *e.exclusion_radius_px;
  return j;
}

EvalConfig EvalFromJson(const Json& j, const std::string& what) {
  EvalConfig e;
  e.success_radius_px = GetOr<int>(j, "success_radius_px", e.success_radius_px, what);
  e.crop_size = GetOr<int>(j, "crop_size", e.crop_size, what);
  if (j.contains("exclusion_radius_px")) {
    e.exclusion_radius_px = Get<int>(j, "exclusion_radius_px", what);
  }
  return e;
}

}  // namespace

void ServiceConfig::validate() const {
  backend.validate();
  augment.validate();
  eval.validate();
  topdown.validate();
  if (listen_port < 1 || listen_port > 65535) {
    Fail(ErrorCode::kInvalidArgument, "listen_port must be in [1, 65535]");
  }
}

std::string ServiceConfig::to_json() const {
  return Json{{"version", kVersion},
              {"dataset_dir", dataset_dir},
              {"assets_dir", assets_dir},
              {"backend", BackendToJson(backend)},
              {"augment", AugmentToJson(augment)},
              {"eval", EvalToJson(eval)},
              {"topdown", internal::ToJson(topdown)},
              {"listen_port", listen_port}}
      .dump(2);
}

std::string ServiceConfig::digest() const { return Sha256Hex(Json::parse(to_json()).dump()); }

ServiceConfig ServiceConfig::FromJson(const std::string& text) {
  const std::string what = "config";
  const Json j = internal::ParseJson(text, what);
  if (!j.is_object()) Fail(ErrorCode::kFormatError, "config: expected a JSON object");
  const int version = GetOr<int>(j, "version", kVersion, what);
  if (version != kVersion) {
    Fail(ErrorCode::kFormatError, "config: unsupported version " + std::to_string(version));
  }
  ServiceConfig c;
  c.dataset_dir = GetOr<std::string>(j, "dataset_dir", c.dataset_dir, what);
  c.assets_dir = GetOr<std::string>(j, "assets_dir", c.assets_dir, what);
  if (j.contains("backend")) c.backend = BackendFromJson(j["backend"], what + ".backend");
  if (j.contains("augment")) c.augment = AugmentFromJson(j["augment"], what + ".augment");
  if (j.contains("eval")) c.eval = EvalFromJson(j["eval"], what + ".eval");
  if (j.contains("topdown")) c.topdown = internal::TopDownConfigFromJson(j["topdown"], what + ".topdown");
  c.listen_port = GetOr<int>(j, "listen_port", c.listen_port, what);
  c.validate();
  return c;
}

ServiceConfig ServiceConfig::Load(const std::filesystem::path& path) {
  try {
    return FromJson(ReadFileText(path));
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

}  // namespace sceneaug
