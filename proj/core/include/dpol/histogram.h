// Copyright 2026 The dpol Authors.
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

#ifndef DPOL_HISTOGRAM_H_
#define DPOL_HISTOGRAM_H_

#include <cstdint>
#include <map>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "dpol/mechanisms.h"
#include "dpol/privacy_ledger.h"
#include "dpol/rng.h"

namespace dpol {

// Noise calibration of the stability histogram. Every nonzero count receives
// discrete Laplace noise of scale 2/epsilon truncated to |Z| <= truncation
// and is released only if the noisy count reaches release_threshold.
struct HistogramCalibration {
  double noise_scale = 0;
  int64_t truncation = 0;         // ceil(2 ln(2/delta) / epsilon)
  int64_t release_threshold = 0;  // truncation + 2
  // Deterministic sup error: 2 * truncation + 1.
  double bound = 0;
};

absl::StatusOr<HistogramCalibration> CalibrateHistogram(
    const PrivacyParams& params);

// 8 ln(8/delta) / epsilon.
double ReferenceHistogramBound(const PrivacyParams& params);

template <typename Key>
class HistogramRelease {
 public:
  HistogramRelease() = default;
  HistogramRelease(std::map<Key, double> released, double bound)
      : released_(std::move(released)), bound_(bound) {}

  // Released count; exactly 0 for suppressed or absent items.
  double Count(const Key& key) const {
    auto it = released_.find(key);
    return it == released_.end() ? 0.0 : it->second;
  }
  const std::map<Key, double>& released() const { return released_; }
  double bound() const { return bound_; }

 private:
  std::map<Key, double> released_;
  double bound_ = 0;
};

// Items are visited in key order so the noise stream is reproducible.
template <typename Key>
absl::StatusOr<HistogramRelease<Key>> PrivateHistogram(
    absl::Span<const Key> data, const PrivacyParams& params, Rng& rng) {
  auto cal = CalibrateHistogram(params);
  if (!cal.ok()) return cal.status();
  std::map<Key, int64_t> counts;
  for (const Key& k : data) ++counts[k];
  std::map<Key, double> released;
  for (const auto& [key, count] : counts) {
    auto z =
        TruncatedDiscreteLaplaceSample(cal->noise_scale, cal->truncation, rng);
    if (!z.ok()) return z.status();
    const int64_t noisy = count + *z;
    if (noisy >= cal->release_threshold) {
      released.emplace(key, static_cast<double>(noisy));
    }
  }
  return HistogramRelease<Key>(std::move(released), cal->bound);
}

}  // namespace dpol

#endif  // DPOL_HISTOGRAM_H_
