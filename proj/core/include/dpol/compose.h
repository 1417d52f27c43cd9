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

#ifndef DPOL_COMPOSE_H_
#define DPOL_COMPOSE_H_

#include <cstddef>
#include <functional>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "dpol/concept_class.h"

namespace dpol {

using BooleanGate = std::function<bool(absl::Span<const int>)>;

// G(H_1, ..., H_k): every tuple (h_1, ..., h_k) maps x to gate(h_1(x), ...).
absl::StatusOr<ConceptClass> ComposeBoolean(
    const std::vector<const ConceptClass*>& classes, const BooleanGate& gate);

// Index of the labeled point (x, y) in the lifted domain X x {0,1}.
inline size_t LabeledPointIndex(size_t x, int y) { return 2 * x + y; }

// h^label((x, y)) = 1[h(x) != y] over X x {0,1}. Concept i of the result is
// the lift of concept i of `cls`.
ConceptClass LabelClass(const ConceptClass& cls);

// H_{m,1/2}: majority votes of m hypotheses from H.
absl::StatusOr<ConceptClass> MajorityClass(const ConceptClass& cls, size_t m);

ConceptClass XorClass(const ConceptClass& a, const ConceptClass& b);

// X_{m,t} over the domain H: the tuple (x_1, ..., x_m) maps h to
// 1[(1/m) * sum_i h(x_i) >= t].
absl::StatusOr<ConceptClass> ThresholdFractionClass(const ConceptClass& cls,
                                                    size_t m, double t);

}  // namespace dpol

#endif  // DPOL_COMPOSE_H_
