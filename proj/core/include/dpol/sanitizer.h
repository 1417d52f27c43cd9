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

#ifndef DPOL_SANITIZER_H_
#define DPOL_SANITIZER_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "dpol/concept_class.h"
#include "dpol/privacy_ledger.h"
#include "dpol/rng.h"

namespace dpol {

enum class SanitizerKind { kFractional, kRealizableBinary };

// est[i] estimates the empirical mass of concept i of the sanitized class.
struct SanitizerOutput {
  std::vector<double> est;
  double alpha = 0;
  SanitizerKind kind = SanitizerKind::kFractional;
};

// P_S(h) for every concept, in class order.
std::vector<double> EmpiricalMass(const ConceptClass& cls,
                                  absl::Span<const int> points);
// Largest |est(h) - P_S(h)|.
double SupError(const SanitizerOutput& out, const ConceptClass& cls,
                absl::Span<const int> points);

// Result of the per-point histogram sanitizer; the noisy counts are public
// and also drive synthetic data.
struct FiniteSanitizerResult {
  SanitizerOutput output;
  std::vector<double> noisy_counts;  // per domain point, 0 when suppressed
  double histogram_bound = 0;
  size_t n = 0;
};

// est(h) = clip(sum_{h(x)=1} noisy(x) / n). Fails when the achieved alpha,
// |X| * bound / n, exceeds alpha_target.
absl::StatusOr<FiniteSanitizerResult> SanitizeFinite(
    absl::Span<const int> points, const ConceptClass& cls,
    const PrivacyParams& params, double alpha_target, Rng& rng);

// Sanitizer for the labeled class h^label over X x {0,1}.
absl::StatusOr<FiniteSanitizerResult> SanitizeLabeled(
    absl::Span<const LabeledExample> data, const ConceptClass& cls,
    const PrivacyParams& params, double alpha_target, Rng& rng);

struct SyntheticDataset {
  std::vector<int> points;
  double alpha = 0;
};

// Size-n dataset apportioned from the noisy counts. alpha is the larger of
// the sanitizer's alpha and the exact synthetic error max_h |P_S'(h) - est(h)|.
absl::StatusOr<SyntheticDataset> Synthesize(const FiniteSanitizerResult& result,
                                            const ConceptClass& cls);

// Decodes a synthetic dataset over X x {0,1} into labeled examples.
std::vector<LabeledExample> DecodeLabeled(absl::Span<const int> points);

// {"points": [...]} or {"examples": [[x, y], ...]}, optional "alpha".
struct Dataset {
  std::vector<int> points;
  std::vector<LabeledExample> examples;
  bool labeled = false;
  std::optional<double> alpha;
};
absl::StatusOr<Dataset> ParseDatasetJson(const std::string& text,
                                         size_t num_points);
std::string DatasetToJson(const Dataset& dataset);

}  // namespace dpol

#endif  // DPOL_SANITIZER_H_
