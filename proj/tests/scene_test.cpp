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

#include <algorithm>
#include <filesystem>
#include <set>

#include "sceneaug/codec.hpp"
#include "sceneaug/dataset_io.hpp"
#include "sceneaug/scene.hpp"
#include "sceneaug/synth.hpp"
#include "test_util.hpp"

namespace sceneaug {
namespace {

namespace fs = std::filesystem;
using test_util::CodeOf;
using test_util::TempDir;

bool Contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

TEST(ValidateDemoTest, SynthDemoIsValid) {
  const Demo d = SynthDemo(0);
  EXPECT_TRUE(ValidateDemo(d).empty());
}

TEST(ValidateDemoTest, PickOnBackground) {
  Demo d = SynthDemo(1);
  const Bitmap bg = d.masks.background();
  for (int v = 0; v < bg.height(); ++v) {
    for (int u = 0; u < bg.width(); ++u) {
      if (bg.at(u, v)) {
        d.action->pick = {u, v};
        v = bg.height();
        break;
      }
    }
  }
  EXPECT_TRUE(Contains(ValidateDemo(d), "pick_px outside pick_object"));
}

TEST(ValidateDemoTest, OverlappingMasks) {
  Demo d = SynthDemo(2);
  d.masks.place_target.at(d.action->pick) = 1;
  EXPECT_TRUE(Contains(ValidateDemo(d), "masks intersect"));
}

TEST(ValidateDemoTest, MissingActionAndEmptyMasks) {
  Demo d = SynthDemo(3);
  d.action.reset();
  d.masks = MaskSet::Empty(d.obs.width(), d.obs.height());
  const auto violations = ValidateDemo(d);
  EXPECT_TRUE(Contains(violations, "action missing"));
  EXPECT_TRUE(Contains(violations, "pick_object mask empty"));
  EXPECT_TRUE(Contains(violations, "place_target mask empty"));
}

TEST(SynthTest, DeterministicInSeed) {
  EXPECT_EQ(SynthDemo(0), SynthDemo(0));
  EXPECT_NE(SynthDemo(0).obs.rgb, SynthDemo(1).obs.rgb);
}

TEST(SynthTest, PickActionIsBruteForceCentroid) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Demo d = SynthDemo(seed);
    ASSERT_TRUE(ValidateDemo(d).empty()) << seed;
    long long su = 0, sv = 0, n = 0;
    const Bitmap& m = d.masks.pick_object;
    for (int v = 0; v < m.height(); ++v) {
      for (int u = 0; u < m.width(); ++u) {
        if (m.at(u, v)) {
          su += u;
          sv += v;
          ++n;
        }
      }
    }
    ASSERT_GT(n, 0);
    EXPECT_EQ(su % n, 0);
    EXPECT_EQ(sv % n, 0);
    EXPECT_EQ(d.action->pick, (Pixel{static_cast<int>(su / n), static_cast<int>(sv / n)}));
  }
}

TEST(SynthTest, ObjectCentersCoverWorkspace) {
  // 16 x 8 occupancy grid over the image; pick and place centers both count.
  constexpr int kCols = 16, kRows = 8;
  std::set<int> hit;
  const TopDownConfig c;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Demo d = SynthDemo(seed);
    for (Pixel p : {d.action->pick, d.action->place}) {
      hit.insert((p.v * kRows / c.height()) * kCols + p.u * kCols / c.width());
    }
  }
  EXPECT_GE(static_cast<double>(hit.size()) / (kCols * kRows), 0.9);
}

TEST(ScoreMapTest, ArgmaxTiesGoToLowestRowMajorIndex) {
  ScoreMap s{Image<float>(5, 4, 1, 0.0f)};
  EXPECT_EQ(s.argmax(), (Pixel{0, 0}));
  s.values.at(3, 1) = 2.0f;
  s.values.at(1, 2) = 2.0f;
  EXPECT_EQ(s.argmax(), (Pixel{3, 1}));
}

TEST(MaskIndicesTest, RoundTrip) {
  Demo d = SynthDemo(4);
  Bitmap extra = MakeBitmap(d.obs.width(), d.obs.height());
  extra.at(0, 0) = 1;
  d.masks.distractors.push_back(extra);
  const auto idx = EncodeMaskIndices(d.masks);
  EXPECT_EQ(idx.at(0, 0), 3);
  EXPECT_EQ(idx.at(d.action->pick), 1);
  EXPECT_EQ(idx.at(d.action->place), 2);
  EXPECT_EQ(DecodeMaskIndices(idx, 1), d.masks);
}

TEST(DatasetIoTest, EmptyDatasetRoundTrips) {
  TempDir tmp;
  DemoDataset ds;
  ds.sync_manifest();
  SaveDataset(ds, tmp / "empty");
  const DemoDataset back = LoadDataset(tmp / "empty");
  EXPECT_EQ(back, ds);
  EXPECT_TRUE(back.demos.empty());
}

TEST(DatasetIoTest, TenDemosRoundTripBitExact) {
  TempDir tmp;
  DemoDataset ds = SynthDataset(100, 10);
  ds.manifest.config_digest = "abc";
  ds.demos[3].condition = Condition::kUnseenPick;
  ds.demos[4].provenance = {Provenance::Kind::kAugmented, "synth_100", "deadbeef"};
  ds.demos[5].obs.heightmap.at(0, 0) = 0.123f;
  Bitmap extra = MakeBitmap(ds.demos[5].obs.width(), ds.demos[5].obs.height());
  extra.at(1, 1) = 1;
  ds.demos[5].masks.distractors.push_back(extra);
  SaveDataset(ds, tmp / "ten");
  std::size_t dirs = 0;
  for (const auto& e : fs::directory_iterator(tmp / "ten")) dirs += e.is_directory();
  EXPECT_EQ(dirs, 10u);
  EXPECT_TRUE(fs::exists(tmp / "ten" / "dataset.json"));
  const DemoDataset back = LoadDataset(tmp / "ten");
  EXPECT_EQ(back, ds);
  EXPECT_EQ(DatasetDigest(back), DatasetDigest(ds));

  // Saving the loaded copy produces byte-identical files.
  SaveDataset(back, tmp / "again");
  for (const auto& e : fs::recursive_directory_iterator(tmp / "ten")) {
    if (!e.is_regular_file()) continue;
    const auto rel = fs::relative(e.path(), tmp / "ten");
    EXPECT_EQ(ReadFileBytes(e.path()), ReadFileBytes(tmp / "again" / rel)) << rel;
  }
}

TEST(DatasetIoTest, HeightPngIsMillimeters) {
  TempDir tmp;
  DemoDataset ds = SynthDataset(7, 1);
  SaveDataset(ds, tmp / "d");
  const auto mm = DecodePngAsGray16(ReadFileBytes(tmp / "d" / ds.demos[0].id / "height.png"));
  const Pixel p = ds.demos[0].action->pick;
  EXPECT_EQ(mm.at(p), HeightToMillimeters(ds.demos[0].obs.heightmap.at(p)));
  EXPECT_GT(mm.at(p), 0);
}

TEST(DatasetIoTest, MissingDemoDirectoryIsFormatError) {
  TempDir tmp;
  const DemoDataset ds = SynthDataset(0, 5);
  SaveDataset(ds, tmp / "d");
  fs::remove_all(tmp / "d" / ds.demos[2].id);
  EXPECT_EQ(CodeOf([&] { LoadDataset(tmp / "d"); }), ErrorCode::kFormatError);
}

TEST(DatasetIoTest, CorruptManifestIsFormatError) {
  TempDir tmp;
  SaveDataset(SynthDataset(0, 1), tmp / "d");
  WriteFileAtomic(tmp / "d" / "dataset.json", std::string_view("{not json"));
  const auto code = CodeOf([&] { LoadDataset(tmp / "d"); });
  ASSERT_TRUE(code);
  EXPECT_TRUE(*code == ErrorCode::kFormatError || *code == ErrorCode::kParseError);
  EXPECT_EQ(CodeOf([&] { LoadDataset(tmp / "nowhere"); }), ErrorCode::kFormatError);
}

TEST(DatasetIoTest, DimMismatchIsFormatError) {
  TempDir tmp;
  const DemoDataset ds = SynthDataset(0, 1);
  SaveDataset(ds, tmp / "d");
  WriteFileAtomic(tmp / "d" / ds.demos[0].id / "rgb.png", EncodePngRgb(MakeRgb(3, 3)));
  EXPECT_EQ(CodeOf([&] { LoadDataset(tmp / "d"); }), ErrorCode::kFormatError);
}

TEST(DatasetIoTest, DuplicateIdsRejected) {
  TempDir tmp;
  DemoDataset ds = SynthDataset(0, 2);
  ds.demos[1].id = ds.demos[0].id;
  ds.sync_manifest();
  EXPECT_EQ(CodeOf([&] { SaveDataset(ds, tmp / "d"); }), ErrorCode::kInvalidArgument);
  EXPECT_FALSE(fs::exists(tmp / "d" / "dataset.json"));
}

TEST(DatasetIoTest, ReplaceDemoSwapsOneDemo) {
  TempDir tmp;
  DemoDataset ds = SynthDataset(0, 3);
  SaveDataset(ds, tmp / "d");
  Demo changed = ds.demos[1];
  changed.action->pick = changed.action->place;
  ReplaceDemo(tmp / "d", changed);
  const DemoDataset back = LoadDataset(tmp / "d");
  EXPECT_EQ(back.demos[1], changed);
  EXPECT_EQ(back.demos[0], ds.demos[0]);
  EXPECT_EQ(back.demos[2], ds.demos[2]);
}

}  // namespace
}  // namespace sceneaug
