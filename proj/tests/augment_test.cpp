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

#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <numbers>

#include "sceneaug/assets.hpp"
#include "sceneaug/augment.hpp"
#include "sceneaug/dataset_io.hpp"
#include "sceneaug/mesh.hpp"
#include "sceneaug/synth.hpp"
#include "test_util.hpp"

namespace sceneaug {
namespace {

using test_util::CodeOf;
using test_util::TempDir;
using P = AssetLibrary::Pool;

const AssetLibrary& Library() {
  static const AssetLibrary lib = StandardAssetLibrary(0);
  return lib;
}

const PromptVocab& Vocab() {
  static const PromptVocab vocab = PromptVocab::Default(Library());
  return vocab;
}

bool SameOutside(const RgbImage& a, const RgbImage& b, const Bitmap& region) {
  for (int v = 0; v < a.height(); ++v)
    for (int u = 0; u < a.width(); ++u)
      if (!region.at(u, v))
        for (int c = 0; c < 3; ++c)
          if (a.at(u, v, c) != b.at(u, v, c)) return false;
  return true;
}

bool SameOutside(const HeightMap& a, const HeightMap& b, const Bitmap& region) {
  for (int v = 0; v < a.height(); ++v)
    for (int u = 0; u < a.width(); ++u)
      if (!region.at(u, v) && a.at(u, v) != b.at(u, v)) return false;
  return true;
}

Centroid BruteCentroid(const Bitmap& m) {
  double su = 0, sv = 0, n = 0;
  for (int v = 0; v < m.height(); ++v)
    for (int u = 0; u < m.width(); ++u)
      if (m.at(u, v)) {
        su += u;
        sv += v;
        ++n;
      }
  return {su / n, sv / n};
}

bool PixelOverlap(const Bitmap& a, const Bitmap& b) {
  for (std::size_t i = 0; i < a.data().size(); ++i)
    if (a.data()[i] && b.data()[i]) return true;
  return false;
}

TEST(SamplePlanTest, ForcedBackground) {
  AugmentConfig c;
  c.op_probs = {0, 0, 0, 0, 0, 1};
  Rng rng(1);
  const AugmentPlan plan = SamplePlan(rng, c, Library(), Vocab());
  ASSERT_EQ(plan.ops.size(), 1u);
  const auto* bg = std::get_if<BackgroundOp>(&plan.ops[0]);
  ASSERT_NE(bg, nullptr);
  EXPECT_EQ(bg->prompt.rfind("a ", 0), 0u);
  EXPECT_EQ(bg->prompt.substr(bg->prompt.size() - 5), "table");
}

TEST(SamplePlanTest, DeterministicAndDigestStable) {
  AugmentConfig c;
  Rng a(77), b(77);
  const AugmentPlan pa = SamplePlan(a, c, Library(), Vocab());
  const AugmentPlan pb = SamplePlan(b, c, Library(), Vocab());
  EXPECT_EQ(pa.to_json(), pb.to_json());
  EXPECT_EQ(pa.digest(), pb.digest());
  EXPECT_EQ(pa.digest().size(), 64u);
}

TEST(SamplePlanTest, FixedOperatorOrder) {
  AugmentConfig c;
  c.op_probs = {1, 1, 1, 1, 1, 1};
  Rng rng(3);
  const AugmentPlan plan = SamplePlan(rng, c, Library(), Vocab());
  ASSERT_GE(plan.ops.size(), 6u);
  EXPECT_TRUE(std::holds_alternative<CrossCategoryOp>(plan.ops[0]));
  EXPECT_TRUE(std::holds_alternative<CrossCategoryOp>(plan.ops[1]));
  EXPECT_TRUE(std::holds_alternative<InCategoryOp>(plan.ops[2]));
  EXPECT_TRUE(std::holds_alternative<InCategoryOp>(plan.ops[3]));
  EXPECT_TRUE(std::holds_alternative<DistractorOp>(plan.ops[4]));
  EXPECT_TRUE(std::holds_alternative<BackgroundOp>(plan.ops.back()));
}

TEST(SamplePlanTest, InclusionFrequenciesMatchRejectionAnalytics) {
  AugmentConfig c;
  c.op_probs = {0.5, 0.5, 0.5, 0.5, 0.5, 0.5};
  Rng rng(2023);
  constexpr int kSamples = 10000;
  std::array<int, kOpKindCount> counts{};
  for (int i = 0; i < kSamples; ++i) {
    const AugmentPlan plan = SamplePlan(rng, c, Library(), Vocab());
    std::array<bool, kOpKindCount> seen{};
    for (const auto& op : plan.ops) {
      if (const auto* o = std::get_if<CrossCategoryOp>(&op))
        seen[o->role == Role::kPick ? 0 : 1] = true;
      else if (const auto* o = std::get_if<InCategoryOp>(&op))
        seen[o->role == Role::kPick ? 2 : 3] = true;
      else if (std::holds_alternative<DistractorOp>(op))
        seen[4] = true;
      else
        seen[5] = true;
    }
    for (int k = 0; k < kOpKindCount; ++k) counts[k] += seen[k];
  }
  // P(op | plan nonempty) = p / (1 - (1 - p)^6)
  const double expected = 0.5 / (1.0 - std::pow(0.5, 6));
  for (int k = 0; k < kOpKindCount; ++k) {
    const double f = static_cast<double>(counts[k]) / kSamples;
    EXPECT_GE(f, 0.47) << ToString(static_cast<OpKind>(k));
    EXPECT_LE(f, 0.53) << ToString(static_cast<OpKind>(k));
    EXPECT_NEAR(f, expected, 0.02);
  }
}

TEST(SamplePlanTest, DistractorCountWithinRange) {
  AugmentConfig c;
  c.op_probs = {0, 0, 0, 0, 1, 0};
  c.distractor_min = 2;
  c.distractor_max = 4;
  Rng rng(8);
  std::array<int, 5> hist{};
  for (int i = 0; i < 600; ++i) {
    const auto n = SamplePlan(rng, c, Library(), Vocab()).ops.size();
    ASSERT_GE(n, 2u);
    ASSERT_LE(n, 4u);
    ++hist[n];
  }
  for (int n = 2; n <= 4; ++n) EXPECT_GT(hist[n], 150);
}

TEST(SamplePlanTest, ConfigValidation) {
  AugmentConfig c;
  c.op_probs = {0, 0, 0, 0, 0, 0};
  EXPECT_EQ(CodeOf([&] { c.validate(); }), ErrorCode::kInvalidArgument);
  c = AugmentConfig{};
  c.op_probs[2] = -0.1;
  EXPECT_EQ(CodeOf([&] { c.validate(); }), ErrorCode::kInvalidArgument);
  c = AugmentConfig{};
  c.scale_jitter_lo = 2.0;
  EXPECT_EQ(CodeOf([&] { c.validate(); }), ErrorCode::kInvalidArgument);
  c = AugmentConfig{};
  c.count = -1;
  EXPECT_EQ(CodeOf([&] { c.validate(); }), ErrorCode::kInvalidArgument);
}

TEST(OpKindTest, NamesRoundTrip) {
  for (int k = 0; k < kOpKindCount; ++k) {
    const auto kind = static_cast<OpKind>(k);
    EXPECT_EQ(OpKindFromString(ToString(kind)), kind);
  }
  EXPECT_EQ(ToString(OpKind::kCrossPick), "cross_category_pick");
  EXPECT_EQ(CodeOf([] { OpKindFromString("nope"); }), ErrorCode::kInvalidArgument);
}

TEST(InCategoryTest, OnlyRoleRgbChanges) {
  ProceduralBackend backend;
  const Demo d = SynthDemo(5);
  for (Role role : {Role::kPick, Role::kPlace}) {
    const Demo out = AugInCategory(d, role, "a green metal object", 9, backend);
    EXPECT_EQ(out.masks, d.masks);
    EXPECT_EQ(out.obs.heightmap, d.obs.heightmap);
    EXPECT_EQ(out.action, d.action);
    EXPECT_TRUE(SameOutside(out.obs.rgb, d.obs.rgb, d.masks.role(role)));
    EXPECT_NE(out.obs.rgb, d.obs.rgb);
  }
}

TEST(BackgroundTest, ObjectsUntouchedAndPromptsMatter) {
  ProceduralBackend backend;
  const Demo d = SynthDemo(6);
  const Demo wood = AugBackground(d, "a wooden kitchen table", 4, backend);
  const Demo marble = AugBackground(d, "a marble bathroom counter", 4, backend);
  EXPECT_EQ(wood.masks, d.masks);
  EXPECT_EQ(wood.action, d.action);
  EXPECT_EQ(wood.obs.heightmap, d.obs.heightmap);
  EXPECT_TRUE(SameOutside(wood.obs.rgb, d.obs.rgb, d.masks.background()));
  const Bitmap bg = d.masks.background();
  std::size_t n = 0, diff = 0;
  for (int v = 0; v < bg.height(); ++v)
    for (int u = 0; u < bg.width(); ++u)
      if (bg.at(u, v)) {
        ++n;
        diff += wood.obs.rgb.at(u, v, 0) != marble.obs.rgb.at(u, v, 0) ||
                wood.obs.rgb.at(u, v, 1) != marble.obs.rgb.at(u, v, 1);
      }
  EXPECT_GE(static_cast<double>(diff) / n, 0.01);
}

TEST(CrossCategoryTest, ReplacementKeepsActionAndCentroid) {
  ProceduralBackend backend;
  const AugmentConfig config;
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const Demo d = SynthDemo(seed);
    for (Role role : {Role::kPick, Role::kPlace}) {
      for (const auto& mesh_id : Library().pool(role == Role::kPick ? P::kPick : P::kPlace)) {
        CrossCategoryOp op{role, mesh_id, "a yellow plastic thing", seed, 0.3 * seed, 1.0};
        Demo out;
        try {
          out = AugCrossCategory(d, op, Library(), config, backend);
        } catch (const Error& e) {
          ASSERT_EQ(e.code(), ErrorCode::kReplacementInvalid);
          continue;
        }
        ++checked;
        ASSERT_TRUE(ValidateDemo(out).empty()) << mesh_id;
        const Bitmap& old_mask = d.masks.role(role);
        const Bitmap& new_mask = out.masks.role(role);
        const Centroid co = BruteCentroid(old_mask), cn = BruteCentroid(new_mask);
        EXPECT_LE(std::hypot(co.u - cn.u, co.v - cn.v), 2.0) << mesh_id;
        const Bitmap touched = Union(old_mask, new_mask);
        EXPECT_TRUE(SameOutside(out.obs.heightmap, d.obs.heightmap, touched));
        EXPECT_TRUE(SameOutside(out.obs.rgb, d.obs.rgb, touched));
        EXPECT_EQ(out.masks.role(role == Role::kPick ? Role::kPlace : Role::kPick),
                  d.masks.role(role == Role::kPick ? Role::kPlace : Role::kPick));
        for (int v = 0; v < new_mask.height(); ++v)
          for (int u = 0; u < new_mask.width(); ++u) {
            if (new_mask.at(u, v)) ASSERT_GT(out.obs.heightmap.at(u, v), 0.0f);
            else if (old_mask.at(u, v)) ASSERT_EQ(out.obs.heightmap.at(u, v), 0.0f);
          }
      }
    }
  }
  EXPECT_GT(checked, 150);
}

TEST(CrossCategoryTest, UnitCubeReplacement) {
  ProceduralBackend backend;
  AssetLibrary lib;
  lib.add_mesh(P::kPick, "cube", MakeBox(1, 1, 1), "cube");
  const Demo d = SynthDemo(21);
  const Demo out = AugCrossCategory(d, {Role::kPick, "cube", "a red wood cube", 1, 0.0, 1.0},
                                    lib, AugmentConfig{}, backend);
  EXPECT_TRUE(ValidateDemo(out).empty());
  EXPECT_TRUE(out.masks.pick_object.at(out.action->pick));
}

TEST(CrossCategoryTest, ImpossibleReplacementFails) {
  ProceduralBackend backend;
  AssetLibrary lib;
  // Two posts with a gap in the middle: the centered action pixel stays
  // uncovered at every scale.
  TriMesh posts;
  for (double dx : {-0.4, 0.4}) {
    const TriMesh post = MakeBox(0.2, 1.0, 1.0);
    const int base = static_cast<int>(posts.vertices.size());
    for (const auto& v : post.vertices) posts.vertices.push_back(v + Eigen::Vector3d(dx, 0, 0));
    for (const auto& t : post.triangles) posts.triangles.push_back({t[0] + base, t[1] + base, t[2] + base});
  }
  lib.add_mesh(P::kPick, "ring", posts, "ring");
  AugmentConfig c;
  c.max_placement_retries = 3;
  const Demo d = SynthDemo(2);
  EXPECT_EQ(CodeOf([&] {
              AugCrossCategory(d, {Role::kPick, "ring", "a ring", 1, 0.0, 1.0}, lib, c, backend);
            }),
            ErrorCode::kReplacementInvalid);
}

TEST(DistractorTest, BoundingBoxRule) {
  const BoundingBox a{10, 10, 20, 20}, b{15, 15, 25, 25}, c{22, 10, 30, 20};
  EXPECT_TRUE(a.intersects(b));
  EXPECT_FALSE(a.intersects(c));
  EXPECT_TRUE(a.expanded(2).intersects(c));
  EXPECT_FALSE(a.expanded(0).intersects(c));
}

TEST(DistractorTest, NoPixelOverlapOverManyPlacements) {
  ProceduralBackend backend;
  AugmentConfig config;
  int accepted = 0;
  std::uint64_t k = 0;
  while (accepted < 1000) {
    const Demo d = SynthDemo(k % 40);
    const auto& pool = Library().pool(P::kDistractor);
    DistractorOp op{pool[k % pool.size()], "a black glass block", k, DeriveSeed(99, {k}), 0.03 + 0.01 * (k % 6)};
    config.collision_margin_px = static_cast<int>(k % 5);
    ++k;
    Demo out;
    try {
      out = AugAddDistractor(d, op, Library(), config, backend);
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::kPlacementExhausted);
      continue;
    }
    ++accepted;
    ASSERT_EQ(out.masks.distractors.size(), d.masks.distractors.size() + 1);
    const Bitmap& m = out.masks.distractors.back();
    ASSERT_FALSE(PixelOverlap(m, out.masks.pick_object));
    ASSERT_FALSE(PixelOverlap(m, out.masks.place_target));
    ASSERT_TRUE(ValidateDemo(out).empty());
    ASSERT_TRUE(SameOutside(out.obs.rgb, d.obs.rgb, m));
    ASSERT_TRUE(SameOutside(out.obs.heightmap, d.obs.heightmap, m));
    ASSERT_EQ(out.action, d.action);
  }
}

TEST(DistractorTest, CrowdedSceneExhausts) {
  ProceduralBackend backend;
  Demo d = SynthDemo(0);
  // Cover the whole image with one protected distractor box.
  Bitmap all = MakeBitmap(d.obs.width(), d.obs.height());
  all.at(0, 0) = 1;
  all.at(d.obs.width() - 1, d.obs.height() - 1) = 1;
  d.masks.distractors.push_back(all);
  DistractorOp op{Library().pool(P::kDistractor)[0], "a red block", 1, 2, 0.05};
  EXPECT_EQ(CodeOf([&] { AugAddDistractor(d, op, Library(), AugmentConfig{}, backend); }),
            ErrorCode::kPlacementExhausted);
}

TEST(ApplyPlanTest, ReplayIsByteIdentical) {
  ProceduralBackend backend;
  AugmentConfig c;
  c.op_probs = {1, 1, 1, 1, 1, 1};
  const Demo d = SynthDemo(8);
  for (std::uint64_t s = 0; s < 5; ++s) {
    Rng rng(s);
    const AugmentPlan plan = SamplePlan(rng, c, Library(), Vocab());
    Demo a, b;
    try {
      a = ApplyPlan(d, plan, Library(), c, backend);
    } catch (const Error& e) {
      ASSERT_EQ(e.code(), ErrorCode::kReplacementInvalid);
      continue;
    }
    b = ApplyPlan(d, plan, Library(), c, backend);
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.provenance.kind, Provenance::Kind::kAugmented);
    EXPECT_EQ(a.provenance.parent_id, d.id);
    EXPECT_EQ(a.provenance.plan_digest, plan.digest());
  }
}

TEST(FillFromNearestTest, CopiesNearestBackgroundColor) {
  RgbImage rgb = MakeRgb(5, 1);
  for (int u = 0; u < 5; ++u) rgb.at(u, 0, 0) = static_cast<std::uint8_t>(10 * u);
  Bitmap bg = MakeBitmap(5, 1), region = MakeBitmap(5, 1);
  bg.at(0, 0) = bg.at(4, 0) = 1;
  region.at(1, 0) = region.at(2, 0) = region.at(3, 0) = 1;
  FillFromNearest(rgb, bg, region);
  EXPECT_EQ(rgb.at(1, 0, 0), 0);
  EXPECT_EQ(rgb.at(2, 0, 0), 0);  // tie goes to the lower index
  EXPECT_EQ(rgb.at(3, 0, 0), 40);
}

RgbaImage SolidCutout(int w, int h, std::uint8_t alpha) {
  RgbaImage c(w, h, 4);
  for (int v = 0; v < h; ++v)
    for (int u = 0; u < w; ++u) {
      c.at(u, v, 0) = 250;
      c.at(u, v, 3) = alpha;
    }
  return c;
}

TEST(BaselineTest, RandomBackgroundKeepsObjects) {
  const Demo d = SynthDemo(3);
  const Demo out = BaselineRandomBackground(d, Library().backgrounds()[0]);
  EXPECT_EQ(out.masks, d.masks);
  EXPECT_EQ(out.obs.heightmap, d.obs.heightmap);
  EXPECT_TRUE(SameOutside(out.obs.rgb, d.obs.rgb, d.masks.background()));
  EXPECT_NE(out.obs.rgb, d.obs.rgb);
}

TEST(BaselineTest, CopyPasteOverPickBreaksInvariance) {
  const Demo d = SynthDemo(3);
  // Seek an rng state whose anchor is the pick object.
  bool covered = false;
  for (std::uint64_t s = 0; s < 50 && !covered; ++s) {
    Rng rng(s);
    const Demo out = BaselineCopyPaste(d, SolidCutout(40, 40, 255), rng);
    EXPECT_EQ(out.obs.heightmap, d.obs.heightmap);
    if (!out.masks.pick_object.at(d.action->pick)) {
      covered = true;
      const auto v = ValidateDemo(out);
      EXPECT_NE(std::find(v.begin(), v.end(), "pick_px outside pick_object"), v.end());
    }
  }
  EXPECT_TRUE(covered);
}

TEST(BaselineTest, DeterministicInRng) {
  const Demo d = SynthDemo(4);
  Rng a(5), b(5);
  EXPECT_EQ(BaselineCopyPaste(d, Library().cutouts()[1], a),
            BaselineCopyPaste(d, Library().cutouts()[1], b));
  EXPECT_EQ(BaselineRandomDistractors(d, Library().cutouts(), a),
            BaselineRandomDistractors(d, Library().cutouts(), b));
  EXPECT_EQ(BaselineSpatial(d, a), BaselineSpatial(d, b));
  EXPECT_EQ(CodeOf([&] { BaselineRandomDistractors(d, {}, a); }), ErrorCode::kEmptyCorpus);
}

TEST(BaselineTest, TransparentCutoutChangesNothing) {
  const Demo d = SynthDemo(4);
  Rng rng(1);
  EXPECT_EQ(BaselineCopyPaste(d, SolidCutout(30, 30, 0), rng), d);
}

TEST(SpatialTest, IdentityAndTranslation) {
  const Demo d = SynthDemo(9);
  EXPECT_EQ(ApplyRigidTransform(d, 0.0, 0.0, 0.0), d);
  const Demo t = ApplyRigidTransform(d, 0.0, 5.0, -3.0);
  EXPECT_EQ(t.action->pick, (Pixel{d.action->pick.u + 5, d.action->pick.v - 3}));
  EXPECT_EQ(t.action->place, (Pixel{d.action->place.u + 5, d.action->place.v - 3}));
  EXPECT_EQ(t.obs.rgb.at(d.action->pick.u + 5, d.action->pick.v - 3, 0),
            d.obs.rgb.at(d.action->pick, 0));
  EXPECT_EQ(CodeOf([&] { ApplyRigidTransform(d, 0.0, 1000.0, 0.0); }), ErrorCode::kOutOfBounds);
}

TEST(SpatialTest, RotatedDemosStayValid) {
  int moved = 0;
  for (std::uint64_t s = 0; s < 40; ++s) {
    const Demo d = SynthDemo(s);
    Rng rng(s);
    const Demo out = BaselineSpatial(d, rng);
    ASSERT_TRUE(ValidateDemo(out).empty());
    ASSERT_TRUE(out.masks.pick_object.at(out.action->pick));
    ASSERT_TRUE(out.masks.place_target.at(out.action->place));
    moved += !(out.action == d.action);
  }
  EXPECT_GT(moved, 30);
}

DemoDataset SmallDataset(int n) {
  DemoDataset ds = SynthDataset(500, n, SynthPalette{}, TopDownConfig{0, 0.64, 0, 0.32, 100, 0});
  return ds;
}

TEST(AugmentDatasetTest, CountsIdsAndValidity) {
  const DemoDataset ds = SmallDataset(3);
  AugmentConfig c;
  c.count = 7;
  c.collision_margin_px = 1;
  const BackendFactory bf = [] { return std::make_unique<ProceduralBackend>(); };
  const DemoDataset out = AugmentDataset(ds, c, Library(), Vocab(), bf);
  ASSERT_EQ(out.demos.size(), 3u * 8u);
  EXPECT_EQ(out.manifest.ids.size(), out.demos.size());
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(out.demos[i * 8], ds.demos[i]);
    for (int k = 0; k < 7; ++k) {
      const Demo& a = out.demos[i * 8 + 1 + k];
      EXPECT_EQ(a.id, AugmentedId(ds.demos[i].id, k));
      EXPECT_EQ(a.provenance.parent_id, ds.demos[i].id);
      EXPECT_TRUE(ValidateDemo(a).empty());
    }
  }
  EXPECT_EQ(AugmentedId("x", 4), "x_aug004");
}

TEST(AugmentDatasetTest, ZeroCountIsIdentity) {
  const DemoDataset ds = SmallDataset(2);
  AugmentConfig c;
  c.count = 0;
  const DemoDataset out =
      AugmentDataset(ds, c, Library(), Vocab(), [] { return std::make_unique<ProceduralBackend>(); });
  EXPECT_EQ(out.demos, ds.demos);
}

TEST(AugmentDatasetTest, WorkerCountDoesNotChangeBytes) {
  const DemoDataset ds = SmallDataset(2);
  AugmentConfig c;
  c.count = 6;
  c.master_seed = 7;
  const BackendFactory bf = [] { return std::make_unique<ProceduralBackend>(); };
  c.workers = 1;
  const DemoDataset one = AugmentDataset(ds, c, Library(), Vocab(), bf);
  c.workers = 4;
  const DemoDataset four = AugmentDataset(ds, c, Library(), Vocab(), bf);
  EXPECT_EQ(DatasetDigest(one), DatasetDigest(four));
  c.master_seed = 8;
  EXPECT_NE(DatasetDigest(one), DatasetDigest(AugmentDataset(ds, c, Library(), Vocab(), bf)));
}

// Procedural backend that fails once a shared call budget is spent.
class FlakyBackend final : public GenerationBackend {
 public:
  explicit FlakyBackend(std::atomic<int>* budget) : budget_(budget) {}
  GenResult GenerateRaw(const GenRequest& r) override {
    if (budget_->fetch_sub(1) <= 0) Fail(ErrorCode::kRemoteTimeout, "service down");
    return inner_.GenerateRaw(r);
  }
  std::string_view name() const override { return "flaky"; }

 private:
  std::atomic<int>* budget_;
  ProceduralBackend inner_;
};

TEST(AugmentDatasetTest, InterruptedRunResumesToSameBytes) {
  const DemoDataset ds = SmallDataset(2);
  AugmentConfig c;
  c.count = 5;
  c.workers = 1;
  const BackendFactory good = [] { return std::make_unique<ProceduralBackend>(); };
  const DemoDataset full = AugmentDataset(ds, c, Library(), Vocab(), good);

  std::atomic<int> budget{12};
  const BackendFactory flaky = [&] { return std::make_unique<FlakyBackend>(&budget); };
  std::optional<AugmentCheckpoint> checkpoint;
  try {
    AugmentDataset(ds, c, Library(), Vocab(), flaky);
    FAIL() << "expected interruption";
  } catch (const AugmentInterrupted& e) {
    EXPECT_EQ(e.cause(), ErrorCode::kRemoteTimeout);
    checkpoint = e.checkpoint();
  }
  ASSERT_GT(checkpoint->next_task, 0u);
  ASSERT_LT(checkpoint->next_task, 10u);
  const DemoDataset resumed = AugmentDataset(ds, c, Library(), Vocab(), good, checkpoint);
  EXPECT_EQ(DatasetDigest(resumed), DatasetDigest(full));

  AugmentCheckpoint bogus;
  bogus.next_task = 3;
  EXPECT_EQ(CodeOf([&] { AugmentDataset(ds, c, Library(), Vocab(), good, bogus); }),
            ErrorCode::kInvalidArgument);
}

TEST(AugmentDatasetTest, InvalidInputRejected) {
  DemoDataset ds = SmallDataset(1);
  ds.demos[0].action->pick = {0, 0};
  EXPECT_EQ(CodeOf([&] {
              AugmentDataset(ds, AugmentConfig{}, Library(), Vocab(),
                             [] { return std::make_unique<ProceduralBackend>(); });
            }),
            ErrorCode::kInvalidArgument);
}

TEST(BaselineDatasetTest, ShapeAndDeterminism) {
  const DemoDataset ds = SmallDataset(2);
  for (auto kind : {BaselineKind::kCopyPaste, BaselineKind::kRandomBackground,
                    BaselineKind::kRandomDistractors, BaselineKind::kSpatial}) {
    const DemoDataset a = AugmentDatasetBaseline(ds, kind, 4, 3, Library());
    ASSERT_EQ(a.demos.size(), 10u);
    EXPECT_EQ(DatasetDigest(a), DatasetDigest(AugmentDatasetBaseline(ds, kind, 4, 3, Library())));
    EXPECT_EQ(BaselineKindFromString(ToString(kind)), kind);
  }
  AssetLibrary empty;
  EXPECT_EQ(CodeOf([&] { AugmentDatasetBaseline(ds, BaselineKind::kCopyPaste, 1, 0, empty); }),
            ErrorCode::kEmptyCorpus);
}

TEST(AssetLibraryTest, SaveLoadRoundTrip) {
  TempDir tmp;
  AssetLibrary lib = StandardAssetLibrary(1).Subset({"box"}, {"plate", "tray"}, {"block"});
  lib.Save(tmp / "assets");
  const AssetLibrary back = AssetLibrary::Load(tmp / "assets");
  EXPECT_EQ(back.pool(P::kPick), lib.pool(P::kPick));
  EXPECT_EQ(back.pool(P::kPlace), lib.pool(P::kPlace));
  EXPECT_EQ(back.pool(P::kDistractor), lib.pool(P::kDistractor));
  EXPECT_EQ(back.cutouts(), lib.cutouts());
  EXPECT_EQ(back.backgrounds(), lib.backgrounds());
  EXPECT_EQ(back.category("tray"), lib.category("tray"));
  EXPECT_EQ(back.mesh("box").triangles, lib.mesh("box").triangles);
  EXPECT_EQ(CodeOf([&] { back.mesh("cone"); }), ErrorCode::kInvalidArgument);
  std::filesystem::remove(tmp / "assets" / "pick" / "box.obj");
  EXPECT_TRUE(CodeOf([&] { AssetLibrary::Load(tmp / "assets"); }));
}

}  // namespace
}  // namespace sceneaug
