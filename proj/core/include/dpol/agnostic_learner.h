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

#ifndef DPOL_AGNOSTIC_LEARNER_H_
#define DPOL_AGNOSTIC_LEARNER_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "dpol/concept_class.h"
#include "dpol/rng.h"

namespace dpol {

// Fraction of `data` misclassified by h.
double EmpiricalError(const Hypothesis& h,
                      absl::Span<const LabeledExample> data);

// Indices of the lowest-index candidate for every labeling of `points`
// realized by the candidates, in increasing order.
std::vector<size_t> ProjectionRepresentatives(
    absl::Span<const Hypothesis> candidates, absl::Span<const int> points);

// q(S, h) = min_f { dis_{S^I}(h, f) + err_S(f) } for each h in `reps`.
std::vector<double> AgnosticScores(absl::Span<const Hypothesis> candidates,
                                   absl::Span<const size_t> reps,
                                   absl::Span<const LabeledExample> data,
                                   absl::Span<const int> subset_points);

// Exponential mechanism over the candidates with score err_S and
// sensitivity 1/n.
absl::StatusOr<size_t> PrivateErm(absl::Span<const Hypothesis> candidates,
                                  absl::Span<const LabeledExample> data,
                                  double epsilon, Rng& rng);

struct AgnosticLearnResult {
  size_t index = 0;        // into the candidates
  size_t subset_size = 0;  // |I| = ceil(epsilon n), capped at n
  size_t representatives = 0;
  size_t relabeling_index = 0;  // h0 chosen by the exponential mechanism
  double inner_epsilon = 0;     // privacy level of the ERM on S^I
};

// Agnostic empirical learner from a private ERM. Half of epsilon selects h0
// among the projection representatives; PrivateErm then runs on S^I
// relabeled by h0 at the level whose amplification by the ceil(epsilon n)
// subsample is the other half.
// Largest eps_in with ln(1 + rate (e^eps_in - 1)) <= target.
double SubsampledEpsilon(double target, double rate);

absl::StatusOr<AgnosticLearnResult> AgnosticEmpiricalLearn(
    absl::Span<const LabeledExample> data,
    absl::Span<const Hypothesis> candidates, double epsilon, Rng& rng);

}  // namespace dpol

#endif  // DPOL_AGNOSTIC_LEARNER_H_
