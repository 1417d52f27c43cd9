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

#include "dpol/learner.h"

namespace dpol {

MemorizingLearner::MemorizingLearner(ClassPtr cls)
    : cls_(std::move(cls)), version_(cls_->FullMask()) {}

absl::StatusOr<Hypothesis> MemorizingLearner::Predict(Rng&) {
  const size_t i = version_.FirstSetBit();
  return cls_->concept_at(i < cls_->size() ? i : 0);
}

absl::Status MemorizingLearner::Observe(const LabeledExample& example, Rng&) {
  version_ &= cls_->ConsistentMask(example);
  return absl::OkStatus();
}

}  // namespace dpol
