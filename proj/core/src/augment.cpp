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

#include "sceneaug/augment.hpp"

#include <cmath>
#include <numbers>

#include "json_util.hpp"
#include "sceneaug/codec.hpp"

namespace sceneaug {

using internal::Json;

PromptVocab PromptVocab::Default(const AssetLibrary& library) {
  PromptVocab vocab;
  for (const auto& c : ColorVocabulary()) vocab.colors.emplace_back(c.name);
  for (const auto& m : MaterialVocabulary()) vocab.materials.emplace_back(m);
  for (auto p : {AssetLibrary::Pool::kPick, AssetLibrary::Pool::kPlace,
                 AssetLibrary::Pool::kDistractor}) {
    for (const auto& id : library.pool(p)) vocab.category_names[id] = library.category(id);
  }
  return vocab;
}

void PromptVocab::validate() const {
  if (colors.empty() || materials.empty()) {
    Fail(ErrorCode::kInvalidArgument, "prompt vocabulary needs colors and materials");
  }
}

std::string PromptVocab::category(const std::string& mesh_id) const {
  auto it = category_names.find(mesh_id);
  return it == category_names.end() ? mesh_id : it->second;
}

namespace {

constexpr std::string_view kOpNames[kOpKindCount] = {
    "cross_category_pick", "cross_category_place", "in_category_pick",
    "in_category_place",   "distractors",          "background"};

}  // namespace

std::string_view ToString(OpKind kind) { return kOpNames[static_cast<int>(kind)]; }

OpKind OpKindFromString(std::string_view s) {
  for (int k = 0; k < kOpKindCount; ++k) {
    if (kOpNames[k] == s) return static_cast<OpKind>(k);
  }
  Fail(ErrorCode::kInvalidArgument, "unknown operator kind '" + std::string(s) + "'");
}

void AugmentConfig::validate() const {
  auto bad = [](const std::string& m) { Fail(ErrorCode::kInvalidArgument, "augment config: " + m); };
  if (count < 0) bad("count must be >= 0");
  double sum = 0.0;
  for (double p : op_probs) {
    if (!(p >= 0.0 && p <= 1.0)) bad("operator probabilities must lie in [0, 1]");
    sum += p;
  }
  if (!(sum > 0.0)) bad("at least one operator probability must be positive");
  if (distractor_min < 0 || distractor_max < distractor_min) bad("bad distractor count range");
  if (!(scale_jitter_lo > 0.0) || scale_jitter_hi < scale_jitter_lo) bad("bad scale jitter range");
  if (!(distractor_extent_lo > 0.0) || distractor_extent_hi < distractor_extent_lo) {
    bad("bad distractor extent range");
  }
  if (collision_margin_px < 0) bad("collision margin must be >= 0");
  if (max_placement_retries < 1) bad("max_placement_retries must be >= 1");
  if (max_plan_attempts < 1) bad("max_plan_attempts must be >= 1");
  if (workers < 0) bad("workers must be >= 0");
}

namespace {

Json OpToJson(const AugmentOp& op) {
  return std::visit(
      [](const auto& o) -> Json {
        using T = std::decay_t<decltype(o)>;
        if constexpr (std::is_same_v<T, CrossCategoryOp>) {
          return {{"op", "cross_category"}, {"role", ToString(o.role)}, {"mesh", o.mesh_id},
                  {"prompt", o.prompt},     {"seed", o.seed},           {"yaw", o.yaw},
                  {"scale_jitter", o.scale_jitter}};
        } else if constexpr (std::is_same_v<T, InCategoryOp>) {
          return {{"op", "in_category"}, {"role", ToString(o.role)}, {"prompt", o.prompt},
                  {"seed", o.seed}};
        } else if constexpr (std::is_same_v<T, DistractorOp>) {
          return {{"op", "distractor"},      {"mesh", o.mesh_id},
                  {"prompt", o.prompt},      {"seed", o.seed},
                  {"placement_seed", o.placement_seed}, {"extent_m", o.extent_m}};
        } else {
          return {{"op", "background"}, {"prompt", o.prompt}, {"seed", o.seed}};
        }
      },
      op);
}

template <typename T>
const T& Pick(Rng& rng, const std::vector<T>& items) {
  return items[static_cast<std::size_t>(
      rng.uniform_int(0, static_cast<std::int64_t>(items.size()) - 1))];
}

}  // namespace

std::string AugmentPlan::to_json() const {
  Json ops_json = Json::array();
  for (const auto& op : ops) ops_json.push_back(OpToJson(op));
  return Json{{"ops", ops_json}}.dump();
}

std::string AugmentPlan::digest() const { return Sha256Hex(to_json()); }

AugmentPlan SamplePlan(Rng& rng, const AugmentConfig& config, const AssetLibrary& library,
                       const PromptVocab& vocab) {
  config.validate();
  vocab.validate();
  using P = AssetLibrary::Pool;
  std::array<double, kOpKindCount> p = config.op_probs;
  if (library.pool(P::kPick).empty()) p[static_cast<int>(OpKind::kCrossPick)] = 0.0;
  if (library.pool(P::kPlace).empty()) p[static_cast<int>(OpKind::kCrossPlace)] = 0.0;
  if (library.pool(P::kDistractor).empty() || config.distractor_max == 0) {
    p[static_cast<int>(OpKind::kDistractors)] = 0.0;
  }
  bool any = false;
  for (double q : p) any = any || q > 0.0;
  if (!any) Fail(ErrorCode::kInvalidArgument, "no operator kind is selectable with this library");

  std::array<bool, kOpKindCount> on{};
  bool nonempty = false;
  while (!nonempty) {
    for (int k = 0; k < kOpKindCount; ++k) {
      on[k] = rng.bernoulli(p[k]);
      nonempty = nonempty || on[k];
    }
  }

  auto prompt = [&](const std::string& noun) {
    const std::string& color = Pick(rng, vocab.colors);
    const std::string& material = Pick(rng, vocab.materials);
    return "a " + color + " " + material + " " + noun;
  };
  auto is_on = [&](OpKind k) { return on[static_cast<int>(k)]; };

  AugmentPlan plan;
  for (Role role : {Role::kPick, Role::kPlace}) {
    if (!is_on(role == Role::kPick ? OpKind::kCrossPick : OpKind::kCrossPlace)) continue;
    CrossCategoryOp op;
    op.role = role;
    op.mesh_id = Pick(rng, library.pool(role == Role::kPick ? P::kPick : P::kPlace));
    op.prompt = prompt(vocab.category(op.mesh_id));
    op.seed = rng.next();
    op.yaw = rng.uniform(-std::numbers::pi, std::numbers::pi);
    op.scale_jitter = rng.uniform(config.scale_jitter_lo, config.scale_jitter_hi);
    plan.ops.push_back(op);
  }
  for (Role role : {Role::kPick, Role::kPlace}) {
    if (!is_on(role == Role::kPick ? OpKind::kInPick : OpKind::kInPlace)) continue;
    InCategoryOp op;
    op.role = role;
    op.prompt = prompt(role == Role::kPick ? vocab.pick_noun : vocab.place_noun);
    op.seed = rng.next();
    plan.ops.push_back(op);
  }
  if (is_on(OpKind::kDistractors)) {
    const auto n = rng.uniform_int(std::max(config.distractor_min, 1), config.distractor_max);
    for (std::int64_t i = 0; i < n; ++i) {
      DistractorOp op;
      op.mesh_id = Pick(rng, library.pool(P::kDistractor));
      op.prompt = prompt(vocab.category(op.mesh_id));
      op.seed = rng.next();
      op.placement_seed = rng.next();
      op.extent_m = rng.uniform(config.distractor_extent_lo, config.distractor_extent_hi);
      plan.ops.push_back(op);
    }
  }
  if (is_on(OpKind::kBackground)) {
    plan.ops.push_back(BackgroundOp{prompt(vocab.background_noun), rng.next()});
  }
  return plan;
}

Demo ApplyPlan(const Demo& demo, const AugmentPlan& plan, const AssetLibrary& library,
               const AugmentConfig& config, GenerationBackend& backend) {
  Demo cur = demo;
  for (const auto& op : plan.ops) {
    if (const auto* o = std::get_if<CrossCategoryOp>(&op)) {
      cur = AugCrossCategory(cur, *o, library, config, backend);
    } else if (const auto* o = std::get_if<InCategoryOp>(&op)) {
      cur = AugInCategory(cur, o->role, o->prompt, o->seed, backend);
    } else if (const auto* o = std::get_if<DistractorOp>(&op)) {
      try {
        cur = AugAddDistractor(cur, *o, library, config, backend);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kPlacementExhausted) throw;
      }
    } else if (const auto* o = std::get_if<BackgroundOp>(&op)) {
      cur = AugBackground(cur, o->prompt, o->seed, backend);
    }
  }
  cur.provenance = {Provenance::Kind::kAugmented, demo.id, plan.digest()};
  return cur;
}

}  // namespace sceneaug
