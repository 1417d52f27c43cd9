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

#ifndef DPOL_ADVERSARY_H_
#define DPOL_ADVERSARY_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "dpol/concept_class.h"
#include "dpol/rng.h"

namespace dpol {

enum class AdversaryKind {
  kObliviousFixed,
  kRealizableAdaptive,
  kAgnosticNoise,
  kAdaptiveAgnostic,
};

absl::StatusOr<AdversaryKind> ParseAdversaryKind(const std::string& name);
std::string AdversaryKindName(AdversaryKind kind);

struct AdversarySpec {
  AdversaryKind kind = AdversaryKind::kRealizableAdaptive;
  // Replayed by the oblivious kind.
  std::vector<LabeledExample> sequence;
  // Label noise rate of the agnostic-noise kind.
  double noise_rate = 0;
  // Number of adversarial flips available to the adaptive-agnostic kind.
  int64_t flip_budget = 0;
  // Index of the labeling concept h*; drawn uniformly when absent.
  std::optional<size_t> target;
};

// Chooses (x_t, y_t) from the learner's output history h_1, ..., h_{t-1}.
class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual absl::StatusOr<LabeledExample> Next(
      absl::Span<const Hypothesis> history, Rng& rng) = 0;
  // True if every emitted stream is consistent with some concept.
  virtual bool realizable() const = 0;
};

absl::StatusOr<std::unique_ptr<Adversary>> MakeAdversary(
    const AdversarySpec& spec, ClassPtr cls);

}  // namespace dpol

#endif  // DPOL_ADVERSARY_H_
