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

#ifndef DPOL_ABOVE_THRESHOLD_H_
#define DPOL_ABOVE_THRESHOLD_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "dpol/rng.h"

namespace dpol {

// One-shot AboveThreshold over a stream b_1, b_2, ... in [0, span]. Answers
// true (the "above" symbol) and halts once the running sum plus fresh
// Lap(4 span / epsilon) noise reaches the threshold perturbed by
// Lap(2 span / epsilon).
class AboveThreshold {
 public:
  static absl::StatusOr<AboveThreshold> Create(double epsilon, double threshold,
                                               Rng& rng, double span = 1.0);

  absl::StatusOr<bool> Step(double b, Rng& rng);

  bool halted() const { return halted_; }
  double epsilon() const { return epsilon_; }
  double threshold() const { return threshold_; }
  double noisy_threshold() const { return noisy_threshold_; }
  double running_sum() const { return running_sum_; }
  double per_query_scale() const { return per_query_scale_; }
  int64_t steps() const { return steps_; }

  // 8 (ln T + ln(2 / beta)) / epsilon.
  static double AccuracyMargin(double epsilon, int64_t horizon, double beta);

 private:
  AboveThreshold() = default;

  double epsilon_ = 0;
  double span_ = 1;
  double threshold_ = 0;
  double noisy_threshold_ = 0;
  double running_sum_ = 0;
  double per_query_scale_ = 0;
  int64_t steps_ = 0;
  bool halted_ = false;
};

}  // namespace dpol

#endif  // DPOL_ABOVE_THRESHOLD_H_
