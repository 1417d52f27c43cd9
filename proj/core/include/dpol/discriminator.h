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

#ifndef DPOL_DISCRIMINATOR_H_
#define DPOL_DISCRIMINATOR_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "dpol/concept_class.h"
#include "dpol/privacy_ledger.h"
#include "dpol/rng.h"

namespace dpol {

// H followed by 1 - H: entry i < |H| is concept i, entry |H| + i its
// complement.
std::vector<Hypothesis> AugmentWithComplements(const ConceptClass& cls);

struct AgnosticDiscriminatorResult {
  bool win = false;
  size_t hypothesis = 0;  // index into AugmentWithComplements(cls)
  size_t bucket = 0;      // chosen j in [1, k]
  double noisy_gap = 0;   // P_S(h0) + X - j/k
};

// max(20 ln(60/(alpha beta)), 30 ln(3/beta)) / (epsilon alpha).
double AgnosticDiscriminatorSampleFloor(double epsilon, double alpha,
                                        double beta);

// The bucketed discriminator: either WIN or some h in H u (1-H) with
// P_S(h) - P_t(h) >= alpha/2, each with probability >= 1 - beta. p_t holds
// P_t(h) for the concepts of `cls`; complements use 1 - P_t(h).
absl::StatusOr<AgnosticDiscriminatorResult> DiscriminateAgnostic(
    absl::Span<const int> points, const ConceptClass& cls,
    absl::Span<const double> p_t, const PrivacyParams& params, double alpha,
    double beta, Rng& rng);

// Generator side of the fractional sanitization game. Declared for callers
// that bring their own construction; none is provided here.
class FractionalGenerator {
 public:
  virtual ~FractionalGenerator() = default;
  // P_t over the concepts of the class.
  virtual std::vector<double> Propose() = 0;
  // Feedback from a non-WIN answer of DiscriminateAgnostic.
  virtual void Absorb(const AgnosticDiscriminatorResult& answer) = 0;
};

struct RealizableDiscriminatorResult {
  bool win = false;
  size_t hypothesis = 0;  // index into cls
  int bit = 0;            // 1: heavy but Q_t = 0; 0: light but Q_t = 1
};

// 36 ln(4/beta) / (epsilon alpha).
double RealizableDiscriminatorSampleFloor(double epsilon, double alpha,
                                          double beta);

// Two-sided test of Q_t against the realizable sanitization contract.
absl::StatusOr<RealizableDiscriminatorResult> DiscriminateRealizable(
    absl::Span<const int> points, const ConceptClass& cls,
    absl::Span<const int> q_t, const PrivacyParams& params, double alpha,
    double beta, Rng& rng);

}  // namespace dpol

#endif  // DPOL_DISCRIMINATOR_H_
