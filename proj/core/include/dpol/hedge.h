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

#ifndef DPOL_HEDGE_H_
#define DPOL_HEDGE_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "dpol/concept_class.h"
#include "dpol/learner.h"
#include "dpol/rng.h"

namespace dpol {

// sqrt(8 ln(size) / horizon).
double DefaultHedgeEta(int64_t horizon, size_t size);

// Exponential weights over the concepts of a finite class; every output is
// a sampled member of the class.
class HedgeLearner : public OnlineLearner {
 public:
  HedgeLearner(ClassPtr cls, double eta);

  absl::StatusOr<Hypothesis> Predict(Rng& rng) override;
  absl::Status Observe(const LabeledExample& example, Rng& rng) override;
  std::string name() const override { return "hedge"; }

  // Sampling distribution proportional to exp(-eta * mistakes).
  std::vector<double> Probabilities() const;
  const std::vector<int64_t>& mistakes() const { return mistakes_; }
  size_t last_index() const { return last_index_; }

 private:
  ClassPtr cls_;
  double eta_;
  std::vector<int64_t> mistakes_;
  size_t last_index_ = 0;
};

}  // namespace dpol

#endif  // DPOL_HEDGE_H_
