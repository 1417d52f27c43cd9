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

#include "dpol/above_threshold.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpol/mechanisms.h"

namespace dpol {

absl::StatusOr<AboveThreshold> AboveThreshold::Create(double epsilon,
                                                      double threshold,
                                                      Rng& rng, double span) {
  if (!(epsilon > 0) || !(span > 0)) {
    return absl::InvalidArgumentError(
        "AboveThreshold needs positive epsilon and span");
  }
  AboveThreshold svt;
  svt.epsilon_ = epsilon;
  svt.span_ = span;
  svt.threshold_ = threshold;
  svt.per_query_scale_ = 4 * span / epsilon;
  auto noise = LaplaceSample(2 * span / epsilon, rng);
  if (!noise.ok()) return noise.status();
  svt.noisy_threshold_ = threshold + *noise;
  return svt;
}

absl::StatusOr<bool> AboveThreshold::Step(double b, Rng& rng) {
  if (halted_) {
    return absl::FailedPreconditionError("AboveThreshold already halted");
  }
  if (!(b >= 0 && b <= span_)) {
    return absl::InvalidArgumentError(
        absl::StrCat("AboveThreshold input ", b, " outside [0, ", span_, "]"));
  }
  ++steps_;
  running_sum_ += b;
  auto noise = LaplaceSample(per_query_scale_, rng);
  if (!noise.ok()) return noise.status();
  if (running_sum_ + *noise >= noisy_threshold_) {
    halted_ = true;
    return true;
  }
  return false;
}

double AboveThreshold::AccuracyMargin(double epsilon, int64_t horizon,
                                      double beta) {
  return 8 * (std::log(static_cast<double>(horizon)) + std::log(2 / beta)) /
         epsilon;
}

}  // namespace dpol
