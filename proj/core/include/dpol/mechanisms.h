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

#ifndef DPOL_MECHANISMS_H_
#define DPOL_MECHANISMS_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "dpol/rng.h"

namespace dpol {

// Sample with density (1/2b) exp(-|x|/b).
absl::StatusOr<double> LaplaceSample(double scale, Rng& rng);

// Integer Z with P(Z = z) proportional to exp(-|z| / scale).
absl::StatusOr<int64_t> DiscreteLaplaceSample(double scale, Rng& rng);
// The same law conditioned on |Z| <= bound (rejection sampling).
absl::StatusOr<int64_t> TruncatedDiscreteLaplaceSample(double scale,
                                                       int64_t bound, Rng& rng);

// Selection probabilities proportional to exp(-epsilon * score / (2 *
// sensitivity)); lower scores are better. Infinite scores get probability 0.
absl::StatusOr<std::vector<double>> ExponentialMechanismProbabilities(
    absl::Span<const double> scores, double sensitivity, double epsilon);

absl::StatusOr<size_t> ExponentialMechanism(absl::Span<const double> scores,
                                            double sensitivity, double epsilon,
                                            Rng& rng);

// Index drawn from unnormalized nonnegative weights.
size_t SampleDiscrete(absl::Span<const double> weights, Rng& rng);

}  // namespace dpol

#endif  // DPOL_MECHANISMS_H_
