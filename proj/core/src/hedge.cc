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

#include "dpol/hedge.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "dpol/mechanisms.h"

namespace dpol {

double DefaultHedgeEta(int64_t horizon, size_t size) {
  if (horizon <= 0 || size <= 1) return 0;
  return std::sqrt(8 * std::log(static_cast<double>(size)) /
                   static_cast<double>(horizon));
}

HedgeLearner::HedgeLearner(ClassPtr cls, double eta)
    : cls_(std::move(cls)), eta_(eta), mistakes_(cls_->size(), 0) {}

std::vector<double> HedgeLearner::Probabilities() const {
  const int64_t best = *std::min_element(mistakes_.begin(), mistakes_.end());
  std::vector<double> w(mistakes_.size());
  double total = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    w[i] = std::exp(-eta_ * static_cast<double>(mistakes_[i] - best));
    total += w[i];
  }
  for (double& p : w) p /= total;
  return w;
}

absl::StatusOr<Hypothesis> HedgeLearner::Predict(Rng& rng) {
  last_index_ = cls_->size() == 1 ? 0 : SampleDiscrete(Probabilities(), rng);
  return cls_->concept_at(last_index_);
}

absl::Status HedgeLearner::Observe(const LabeledExample& example, Rng&) {
  if (example.point < 0 ||
      static_cast<size_t>(example.point) >= cls_->num_points()) {
    return absl::OutOfRangeError("example outside the domain");
  }
  for (size_t i = 0; i < mistakes_.size(); ++i) {
    mistakes_[i] += cls_->concept_at(i)(example.point) != example.label;
  }
  return absl::OkStatus();
}

}  // namespace dpol
