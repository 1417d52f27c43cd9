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

#include "dpol/histogram.h"

#include <cmath>

#include "absl/status/status.h"

namespace dpol {

absl::StatusOr<HistogramCalibration> CalibrateHistogram(
    const PrivacyParams& params) {
  if (absl::Status s = ValidatePrivacyParams(params); !s.ok()) return s;
  if (params.delta <= 0) {
    return absl::InvalidArgumentError("private histogram requires delta > 0");
  }
  HistogramCalibration cal;
  cal.noise_scale = 2 / params.epsilon;
  cal.truncation = static_cast<int64_t>(
      std::ceil(2 * std::log(2 / params.delta) / params.epsilon));
  cal.release_threshold = cal.truncation + 2;
  cal.bound = static_cast<double>(2 * cal.truncation + 1);
  return cal;
}

double ReferenceHistogramBound(const PrivacyParams& params) {
  return 8 * std::log(8 / params.delta) / params.epsilon;
}

}  // namespace dpol
