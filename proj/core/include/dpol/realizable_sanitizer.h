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

#ifndef DPOL_REALIZABLE_SANITIZER_H_
#define DPOL_REALIZABLE_SANITIZER_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "dpol/concept_class.h"
#include "dpol/privacy_ledger.h"
#include "dpol/rng.h"
#include "dpol/sanitizer.h"

namespace dpol {

enum class RealizableMode { kDirect, kFooling };

struct RealizableSanitizerConfig {
  RealizableMode mode = RealizableMode::kDirect;
  double alpha = 0.1;
  double beta = 0.05;
  // Size of the point tuples proposed by the generator (fooling mode).
  size_t m = 2;
};

struct RealizableSanitizerResult {
  SanitizerOutput output;            // kRealizableBinary
  std::vector<double> noisy_counts;  // direct mode, per domain point
  int64_t rounds = 0;                // fooling mode: discriminator calls
  int64_t max_rounds = 0;            // fooling mode: Ldim(X_{m, alpha/2}) + 1
  PrivacyLedger ledger;
};

// Fooling-mode caps.
inline constexpr size_t kFoolingMaxPoints = 4;
inline constexpr size_t kFoolingMaxTuple = 3;
inline constexpr size_t kFoolingMaxConcepts = 16;

// Direct mode: per-point histogram counts; est(h) = 1 iff
// sum_{h(x)=1} noisy(x) / n >= alpha/2. The reported alpha is the level at
// which the contract is certain, max(alpha, alpha/2 + |X| bound / n).
// Fooling mode: the SOA over X_{m, alpha/2} proposes Q_t against the
// realizable discriminator until WIN, with the budget split by advanced
// composition over Ldim + 1 rounds.
absl::StatusOr<RealizableSanitizerResult> RealizableSanitize(
    absl::Span<const int> points, const ConceptClass& cls,
    const PrivacyParams& params, const RealizableSanitizerConfig& config,
    Rng& rng);

// Per-round budget of the fooling game over `rounds` rounds:
// (epsilon / (2 sqrt(2 rounds ln(2/delta))), delta / (2 rounds)).
PrivacyParams FoolingRoundBudget(const PrivacyParams& params, int64_t rounds);

// A synthetic sequence of length n containing every released point (by
// apportioned multiplicity); entries are empty when nothing was released.
std::vector<std::optional<int>> RealizableSyntheticSequence(
    absl::Span<const double> noisy_counts, size_t n);

}  // namespace dpol

#endif  // DPOL_REALIZABLE_SANITIZER_H_
