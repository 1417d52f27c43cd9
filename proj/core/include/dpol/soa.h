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

#ifndef DPOL_SOA_H_
#define DPOL_SOA_H_

#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"
#include "absl/synchronization/mutex.h"
#include "dpol/bit_vector.h"
#include "dpol/concept_class.h"
#include "dpol/dimensions.h"

namespace dpol {

struct SoaState {
  BitVector version_class;
  std::vector<LabeledExample> history;
  // The bottom state: the history is not realizable by the class.
  bool failed = false;
};

// Standard Optimal Algorithm over a fixed finite class. Predictions depend
// only on the version class and are memoized per mask.
class Soa {
 public:
  explicit Soa(ClassPtr cls);
  Soa(const Soa&) = delete;
  Soa& operator=(const Soa&) = delete;

  const ConceptClass& concept_class() const { return *cls_; }
  const ClassPtr& class_ptr() const { return cls_; }
  const LittlestoneOracle& oracle() const { return oracle_; }

  SoaState Initial() const;
  // Filters the version class by the example. A failed state stays failed.
  SoaState Step(SoaState state, const LabeledExample& example) const;
  // Predicts label y at every x maximizing the Ldim of the y-restricted
  // version class; ties go to 0. Errors on a failed state.
  absl::StatusOr<Hypothesis> Predict(const SoaState& state) const;
  absl::StatusOr<Hypothesis> PredictMask(const BitVector& version_class) const;

  // Version class after feeding `seq` from the full class.
  BitVector VersionClassOf(const std::vector<LabeledExample>& seq) const;

 private:
  ClassPtr cls_;
  LittlestoneOracle oracle_;
  mutable absl::Mutex mu_;
  mutable absl::flat_hash_map<BitVector, Hypothesis> predictions_
      ABSL_GUARDED_BY(mu_);
};

}  // namespace dpol

#endif  // DPOL_SOA_H_
