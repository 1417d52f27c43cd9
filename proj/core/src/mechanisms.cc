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

#include "dpol/mechanisms.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpol {

absl::StatusOr<double> LaplaceSample(double scale, Rng& rng) {
  if (!(scale > 0) || !std::isfinite(scale)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Laplace scale must be positive and finite, got ", scale));
  }
  const double u = rng.UniformOpen() - 0.5;
  const double magnitude = -scale * std::log1p(-2 * std::fabs(u));
  return u < 0 ? -magnitude : magnitude;
}

absl::StatusOr<int64_t> DiscreteLaplaceSample(double scale, Rng& rng) {
  if (!(scale > 0) || !std::isfinite(scale)) {
    return absl::InvalidArgumentError(
        absl::StrCat("discrete Laplace scale must be positive, got ", scale));
  }
  const double success = -std::expm1(-1 / scale);
  if (success >= 1) return 0;
  std::geometric_distribution<int64_t> geometric(success);
  return geometric(rng.engine()) - geometric(rng.engine());
}

absl::StatusOr<int64_t> TruncatedDiscreteLaplaceSample(double scale,
                                                       int64_t bound,
                                                       Rng& rng) {
  if (bound < 0) {
    return absl::InvalidArgumentError("truncation bound must be nonnegative");
  }
  while (true) {
    auto z = DiscreteLaplaceSample(scale, rng);
    if (!z.ok()) return z.status();
    if (*z >= -bound && *z <= bound) return *z;
  }
}

absl::StatusOr<std::vector<double>> ExponentialMechanismProbabilities(
    absl::Span<const double> scores, double sensitivity, double epsilon) {
  if (scores.empty()) {
    return absl::InvalidArgumentError("exponential mechanism: no candidates");
  }
  if (!(sensitivity > 0) || !(epsilon > 0)) {
    return absl::InvalidArgumentError(
        "exponential mechanism: sensitivity and epsilon must be positive");
  }
  const double factor = epsilon / (2 * sensitivity);
  double best = std::numeric_limits<double>::infinity();
  for (double s : scores) best = std::min(best, s);
  if (!std::isfinite(best)) {
    return absl::InvalidArgumentError(
        "exponential mechanism: every candidate has infinite score");
  }
  std::vector<double> probs(scores.size());
  double total = 0;
  for (size_t i = 0; i < scores.size(); ++i) {
    probs[i] =
        std::isfinite(scores[i]) ? std::exp(-factor * (scores[i] - best)) : 0.0;
    total += probs[i];
  }
  for (double& p : probs) p /= total;
  return probs;
}

absl::StatusOr<size_t> ExponentialMechanism(absl::Span<const double> scores,
                                            double sensitivity, double epsilon,
                                            Rng& rng) {
  auto probs = ExponentialMechanismProbabilities(scores, sensitivity, epsilon);
  if (!probs.ok()) return probs.status();
  return SampleDiscrete(*probs, rng);
}

size_t SampleDiscrete(absl::Span<const double> weights, Rng& rng) {
  double total = 0;
  for (double w : weights) total += w;
  double u = rng.Uniform() * total;
  size_t last_positive = 0;
  for (size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0) continue;
    last_positive = i;
    if (u < weights[i]) return i;
    u -= weights[i];
  }
  return last_positive;
}

}  // namespace dpol
