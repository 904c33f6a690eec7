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

#include "sceneaug/affordance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sceneaug {

void EvalConfig::validate() const {
  if (success_radius_px < 0) Fail(ErrorCode::kInvalidArgument, "success_radius_px must be >= 0");
  if (crop_size < 9 || crop_size % 2 == 0) {
    Fail(ErrorCode::kInvalidArgument, "crop_size must be odd and >= 9");
  }
  if (exclusion_radius_px && *exclusion_radius_px < 0) {
    Fail(ErrorCode::kInvalidArgument, "exclusion_radius_px must be >= 0");
  }
}

std::vector<float> ObservationFeatures(const TopDownObservation& obs) {
  const std::size_t n = obs.rgb.pixel_count();
  std::vector<float> f(n * kFeatureChannels);
  for (int v = 0; v < obs.height(); ++v) {
    for (int u = 0; u < obs.width(); ++u) {
      const std::size_t i = static_cast<std::size_t>(v) * obs.width() + u;
      for (int c = 0; c < 3; ++c) f[c * n + i] = obs.rgb.at(u, v, c) / 255.0f;
      f[3 * n + i] = obs.heightmap.at(u, v) * kHeightFeatureScale;
    }
  }
  return f;
}

namespace {

// Features padded by `r` on every side with edge replication.
struct Padded {
  int w = 0, h = 0, r = 0;  // w, h of the padded planes
  std::vector<float> planes;

  Padded(const TopDownObservation& obs, int radius) : r(radius) {
    const int ow = obs.width(), oh = obs.height();
    w = ow + 2 * r;
    h = oh + 2 * r;
    const auto f = ObservationFeatures(obs);
    const std::size_t n = static_cast<std::size_t>(ow) * oh;
    planes.resize(static_cast<std::size_t>(w) * h * kFeatureChannels);
    for (int c = 0; c < kFeatureChannels; ++c) {
      for (int y = 0; y < h; ++y) {
        const int sy = std::clamp(y - r, 0, oh - 1);
        for (int x = 0; x < w; ++x) {
          const int sx = std::clamp(x - r, 0, ow - 1);
          plane(c)[static_cast<std::size_t>(y) * w + x] =
              f[c * n + static_cast<std::size_t>(sy) * ow + sx];
        }
      }
    }
  }

  float* plane(int c) { return planes.data() + static_cast<std::size_t>(c) * w * h; }
  const float* plane(int c) const { return planes.data() + static_cast<std::size_t>(c) * w * h; }
};

// Each channel loses its own mean; the concatenation is then scaled to unit norm.
std::vector<float> Normalize(std::vector<float> crop) {
  const std::size_t plane = crop.size() / kFeatureChannels;
  double ss = 0.0;
  std::vector<double> centered(crop.size());
  for (int c = 0; c < kFeatureChannels; ++c) {
    double mean = 0.0;
    for (std::size_t i = 0; i < plane; ++i) mean += crop[c * plane + i];
    mean /= static_cast<double>(plane);
    for (std::size_t i = 0; i < plane; ++i) {
      const double x = crop[c * plane + i] - mean;
      centered[c * plane + i] = x;
      ss += x * x;
    }
  }
  if (ss <= 1e-12) {
    std::fill(crop.begin(), crop.end(), 0.0f);
    return crop;
  }
  const double inv = 1.0 / std::sqrt(ss);
  for (std::size_t i = 0; i < crop.size(); ++i) crop[i] = static_cast<float>(centered[i] * inv);
  return crop;
}

std::vector<float> CropFrom(const Padded& p, Pixel center, int crop_size) {
  const int r = crop_size / 2;
  std::vector<float> crop(static_cast<std::size_t>(crop_size) * crop_size * kFeatureChannels);
  std::size_t k = 0;
  for (int c = 0; c < kFeatureChannels; ++c) {
    for (int dy = -r; dy <= r; ++dy) {
      for (int dx = -r; dx <= r; ++dx) {
        crop[k++] = p.plane(c)[static_cast<std::size_t>(center.v + dy + p.r) * p.w +
                               (center.u + dx + p.r)];
      }
    }
  }
  return crop;
}

// Per-window, per-channel sums for the normalization denominators.
class Matcher {
 public:
  Matcher(const TopDownObservation& obs, int crop_size)
      : ow_(obs.width()), oh_(obs.height()), c_(crop_size), padded_(obs, crop_size / 2) {
    const int pw = padded_.w, ph = padded_.h;
    const std::size_t cells = static_cast<std::size_t>(ow_) * oh_;
    const double n = static_cast<double>(c_) * c_;
    std::vector<double> s((pw + 1) * static_cast<std::size_t>(ph + 1));
    std::vector<double> s2(s.size());
    auto at = [&](std::vector<double>& t, int x, int y) -> double& {
      return t[static_cast<std::size_t>(y) * (pw + 1) + x];
    };
    std::vector<double> var(cells, 0.0), sum2_total(cells, 0.0);
    mean_.assign(cells * kFeatureChannels, 0.0f);
    for (int ch = 0; ch < kFeatureChannels; ++ch) {
      std::fill(s.begin(), s.end(), 0.0);
      std::fill(s2.begin(), s2.end(), 0.0);
      const float* plane = padded_.plane(ch);
      for (int y = 0; y < ph; ++y) {
        for (int x = 0; x < pw; ++x) {
          const double val = plane[static_cast<std::size_t>(y) * pw + x];
          at(s, x + 1, y + 1) = val + at(s, x, y + 1) + at(s, x + 1, y) - at(s, x, y);
          at(s2, x + 1, y + 1) = val * val + at(s2, x, y + 1) + at(s2, x + 1, y) - at(s2, x, y);
        }
      }
      for (int v = 0; v < oh_; ++v) {
        for (int u = 0; u < ow_; ++u) {
          auto box = [&](std::vector<double>& t) {
            return at(t, u + c_, v + c_) - at(t, u, v + c_) - at(t, u + c_, v) + at(t, u, v);
          };
          const double sum = box(s), sum2 = box(s2);
          const std::size_t i = static_cast<std::size_t>(v) * ow_ + u;
          var[i] += std::max(0.0, sum2 - sum * sum / n);
          sum2_total[i] += sum2;
          mean_[ch * cells + i] = static_cast<float>(sum / n);
        }
      }
    }
    inv_norm_.resize(cells);
    for (std::size_t i = 0; i < cells; ++i) {
      // Relative threshold: constant windows leave only rounding residue.
      inv_norm_[i] = var[i] > 1e-9 * std::max(1.0, sum2_total[i])
                         ? static_cast<float>(1.0 / std::sqrt(var[i]))
                         : 0.0f;
    }
    acc_.resize(cells);
  }

  // Writes max(out, score) when `accumulate`, else overwrites.
  void correlate(const std::vector<float>& crop, Image<float>& out, bool accumulate) {
    std::fill(acc_.begin(), acc_.end(), 0.0f);
    const int pw = padded_.w;
    const std::size_t cells = acc_.size();
    std::size_t k = 0;
    for (int ch = 0; ch < kFeatureChannels; ++ch) {
      const float* plane = padded_.plane(ch);
      double crop_sum = 0.0;
      for (int dy = 0; dy < c_; ++dy) {
        for (int dx = 0; dx < c_; ++dx) {
          const float w = crop[k++];
          crop_sum += w;
          if (w == 0.0f) continue;
          for (int v = 0; v < oh_; ++v) {
            const float* __restrict src = plane + static_cast<std::size_t>(v + dy) * pw + dx;
            float* __restrict dst = acc_.data() + static_cast<std::size_t>(v) * ow_;
            for (int u = 0; u < ow_; ++u) dst[u] += w * src[u];
          }
        }
      }
      // Crops sum to zero per channel up to rounding; remove that residue exactly.
      const float cs = static_cast<float>(crop_sum);
      const float* mean = mean_.data() + ch * cells;
      for (std::size_t i = 0; i < cells; ++i) acc_[i] -= mean[i] * cs;
    }
    float* o = out.data().data();
    for (std::size_t i = 0; i < cells; ++i) {
      const float score = acc_[i] * inv_norm_[i];
      o[i] = accumulate ? std::max(o[i], score) : score;
    }
  }

 private:
  int ow_, oh_, c_;
  Padded padded_;
  std::vector<float> mean_, inv_norm_, acc_;
};

void CheckCrop(const std::vector<float>& crop, int crop_size) {
  if (crop.size() != static_cast<std::size_t>(crop_size) * crop_size * kFeatureChannels) {
    Fail(ErrorCode::kDimMismatch, "crop does not match crop_size");
  }
}

}  // namespace

std::vector<float> NormalizedCrop(const TopDownObservation& obs, Pixel center, int crop_size) {
  if (!obs.rgb.contains(center)) Fail(ErrorCode::kOutOfBounds, "crop center outside observation");
  return Normalize(CropFrom(Padded(obs, crop_size / 2), center, crop_size));
}

AffordanceModel Fit(const DemoDataset& dataset, const EvalConfig& config) {
  config.validate();
  if (dataset.demos.empty()) Fail(ErrorCode::kEmptyDataset, "cannot fit on an empty dataset");
  AffordanceModel model;
  model.crop_size = config.crop_size;
  model.entries.reserve(dataset.demos.size());
  for (const auto& d : dataset.demos) {
    if (!d.action) Fail(ErrorCode::kInvalidArgument, "demo '" + d.id + "' has no action");
    if (!d.obs.rgb.contains(d.action->pick) || !d.obs.rgb.contains(d.action->place)) {
      Fail(ErrorCode::kOutOfBounds, "demo '" + d.id + "' action outside observation");
    }
    const Padded padded(d.obs, config.crop_size / 2);
    model.entries.push_back({d.task_text, Normalize(CropFrom(padded, d.action->pick, config.crop_size)),
                             Normalize(CropFrom(padded, d.action->place, config.crop_size))});
  }
  return model;
}

Image<float> CorrelationMap(const TopDownObservation& obs, const std::vector<float>& crop,
                            int crop_size) {
  CheckCrop(crop, crop_size);
  Matcher matcher(obs, crop_size);
  Image<float> out(obs.width(), obs.height(), 1);
  matcher.correlate(crop, out, false);
  return out;
}

Prediction Predict(const AffordanceModel& model, const TopDownObservation& obs,
                   const std::string& task_text, int exclusion_radius_px) {
  if (model.entries.empty()) Fail(ErrorCode::kEmptyDataset, "model has no entries");
  std::vector<const AffordanceEntry*> matching;
  for (const auto& e : model.entries) {
    if (e.task_text == task_text) matching.push_back(&e);
  }
  if (matching.empty()) Fail(ErrorCode::kUnknownTask, "no training demo for task '" + task_text + "'");

  Matcher matcher(obs, model.crop_size);
  Prediction p;
  const float lowest = std::numeric_limits<float>::lowest();
  p.pick_scores.values = Image<float>(obs.width(), obs.height(), 1, lowest);
  p.place_scores.values = Image<float>(obs.width(), obs.height(), 1, lowest);
  for (const auto* e : matching) {
    CheckCrop(e->pick_crop, model.crop_size);
    CheckCrop(e->place_crop, model.crop_size);
    matcher.correlate(e->pick_crop, p.pick_scores.values, true);
    matcher.correlate(e->place_crop, p.place_scores.values, true);
  }
  p.pick = p.pick_scores.argmax();
  const long r2 = static_cast<long>(exclusion_radius_px) * exclusion_radius_px;
  for (int v = 0; v < obs.height(); ++v) {
    for (int u = 0; u < obs.width(); ++u) {
      const long du = u - p.pick.u, dv = v - p.pick.v;
      if (du * du + dv * dv <= r2) p.place_scores.values.at(u, v) = lowest;
    }
  }
  p.place = p.place_scores.argmax();
  return p;
}

}  // namespace sceneaug
