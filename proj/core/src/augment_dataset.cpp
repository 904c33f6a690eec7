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

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <mutex>
#include <thread>

#include "sceneaug/augment.hpp"
#include "sceneaug/codec.hpp"

namespace sceneaug {

AugmentInterrupted::AugmentInterrupted(const Error& cause, AugmentCheckpoint checkpoint)
    : Error(cause.code(), std::string("augmentation interrupted: ") + cause.what()),
      checkpoint_(std::move(checkpoint)),
      cause_(cause.code()) {}

std::uint64_t AugmentSeed(std::uint64_t master_seed, const std::string& demo_id, int aug_index,
                          int attempt) {
  return DeriveSeed(master_seed, {HashString(demo_id), static_cast<std::uint64_t>(aug_index),
                                  static_cast<std::uint64_t>(attempt)});
}

std::string AugmentedId(const std::string& parent_id, int aug_index) {
  char suffix[32];
  std::snprintf(suffix, sizeof(suffix), "_aug%03d", aug_index);
  return parent_id + suffix;
}

namespace {

void CheckInputs(const DemoDataset& dataset) {
  for (const auto& d : dataset.demos) {
    const auto problems = ValidateDemo(d);
    if (!problems.empty()) {
      Fail(ErrorCode::kInvalidArgument, "demo '" + d.id + "' is invalid: " + problems.front());
    }
  }
}

DemoDataset Assemble(const DemoDataset& input, std::vector<Demo> augmented, int count) {
  DemoDataset out;
  out.manifest = input.manifest;
  out.demos.reserve(input.demos.size() * (static_cast<std::size_t>(count) + 1));
  std::size_t next = 0;
  for (const auto& d : input.demos) {
    out.demos.push_back(d);
    for (int i = 0; i < count; ++i) out.demos.push_back(std::move(augmented[next++]));
  }
  out.sync_manifest();
  return out;
}

bool Retryable(ErrorCode code) {
  return code == ErrorCode::kReplacementInvalid || code == ErrorCode::kPlacementExhausted;
}

Demo AugmentOne(const Demo& demo, int aug_index, const AugmentConfig& config,
                const AssetLibrary& library, const PromptVocab& vocab,
                GenerationBackend& backend) {
  for (int attempt = 0; attempt < config.max_plan_attempts; ++attempt) {
    Rng rng(AugmentSeed(config.master_seed, demo.id, aug_index, attempt));
    const AugmentPlan plan = SamplePlan(rng, config, library, vocab);
    Demo out;
    try {
      out = ApplyPlan(demo, plan, library, config, backend);
    } catch (const Error& e) {
      if (Retryable(e.code())) continue;
      throw;
    }
    out.id = AugmentedId(demo.id, aug_index);
    if (ValidateDemo(out).empty()) return out;
  }
  Fail(ErrorCode::kReplacementInvalid,
       "no valid augmentation of '" + demo.id + "' within max_plan_attempts");
}

}  // namespace

DemoDataset AugmentDataset(const DemoDataset& dataset, const AugmentConfig& config,
                           const AssetLibrary& library, const PromptVocab& vocab,
                           const BackendFactory& backends,
                           const std::optional<AugmentCheckpoint>& resume) {
  config.validate();
  vocab.validate();
  CheckInputs(dataset);
  const std::size_t per_demo = static_cast<std::size_t>(config.count);
  const std::size_t total = dataset.demos.size() * per_demo;

  std::vector<std::optional<Demo>> results(total);
  std::size_t start = 0;
  if (resume) {
    if (resume->next_task > total || resume->completed.size() != resume->next_task) {
      Fail(ErrorCode::kInvalidArgument, "checkpoint does not match this dataset and config");
    }
    start = resume->next_task;
    for (std::size_t i = 0; i < start; ++i) results[i] = resume->completed[i];
  }

  std::atomic<std::size_t> cursor{start};
  std::atomic<bool> stop{false};
  std::mutex failure_mu;
  std::optional<std::pair<std::size_t, Error>> failure;

  auto work = [&] {
    std::unique_ptr<GenerationBackend> backend;
    while (!stop.load()) {
      const std::size_t task = cursor.fetch_add(1);
      if (task >= total) return;
      const Demo& demo = dataset.demos[task / per_demo];
      try {
        if (!backend) backend = backends();
        results[task] = AugmentOne(demo, static_cast<int>(task % per_demo), config, library,
                                   vocab, *backend);
      } catch (const Error& e) {
        std::lock_guard lock(failure_mu);
        if (!failure || task < failure->first) failure.emplace(task, e);
        stop.store(true);
      }
    }
  };

  unsigned workers = config.workers > 0 ? static_cast<unsigned>(config.workers)
                                        : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(total - start, 1)));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  if (failure) {
    AugmentCheckpoint checkpoint;
    while (checkpoint.next_task < total && results[checkpoint.next_task]) {
      checkpoint.completed.push_back(std::move(*results[checkpoint.next_task]));
      ++checkpoint.next_task;
    }
    throw AugmentInterrupted(failure->second, std::move(checkpoint));
  }

  std::vector<Demo> augmented;
  augmented.reserve(total);
  for (auto& r : results) augmented.push_back(std::move(*r));
  return Assemble(dataset, std::move(augmented), config.count);
}

DemoDataset AugmentDatasetBaseline(const DemoDataset& dataset, BaselineKind kind, int count,
                                   std::uint64_t master_seed, const AssetLibrary& library) {
  if (count < 0) Fail(ErrorCode::kInvalidArgument, "count must be >= 0");
  CheckInputs(dataset);
  const bool needs_cutouts = kind == BaselineKind::kCopyPaste || kind == BaselineKind::kRandomDistractors;
  if (count > 0 && needs_cutouts && library.cutouts().empty()) {
    Fail(ErrorCode::kEmptyCorpus, "cutout corpus is empty");
  }
  if (count > 0 && kind == BaselineKind::kRandomBackground && library.backgrounds().empty()) {
    Fail(ErrorCode::kEmptyCorpus, "background corpus is empty");
  }
  auto pick = [](Rng& rng, const auto& items) -> const auto& {
    return items[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<std::int64_t>(items.size()) - 1))];
  };

  std::vector<Demo> augmented;
  for (const auto& demo : dataset.demos) {
    for (int i = 0; i < count; ++i) {
      const std::uint64_t seed = AugmentSeed(master_seed, demo.id, i, 0);
      Rng rng(seed);
      Demo out;
      switch (kind) {
        case BaselineKind::kCopyPaste:
          out = BaselineCopyPaste(demo, pick(rng, library.cutouts()), rng);
          break;
        case BaselineKind::kRandomBackground:
          out = BaselineRandomBackground(demo, pick(rng, library.backgrounds()));
          break;
        case BaselineKind::kRandomDistractors:
          out = BaselineRandomDistractors(demo, library.cutouts(), rng);
          break;
        case BaselineKind::kSpatial:
          out = BaselineSpatial(demo, rng);
          break;
      }
      out.id = AugmentedId(demo.id, i);
      out.provenance = {Provenance::Kind::kAugmented, demo.id,
                        Sha256Hex(std::string(ToString(kind)) + ":" + std::to_string(seed))};
      augmented.push_back(std::move(out));
    }
  }
  return Assemble(dataset, std::move(augmented), count);
}

}  // namespace sceneaug
