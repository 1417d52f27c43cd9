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

#include "dpol/soa.h"

#include <utility>

#include "absl/status/status.h"

namespace dpol {

Soa::Soa(ClassPtr cls) : cls_(std::move(cls)), oracle_(*cls_) {}

SoaState Soa::Initial() const {
  SoaState state;
  state.version_class = cls_->FullMask();
  return state;
}

SoaState Soa::Step(SoaState state, const LabeledExample& example) const {
  state.history.push_back(example);
  if (state.failed) return state;
  state.version_class &= cls_->ConsistentMask(example);
  state.failed = state.version_class.None();
  return state;
}

absl::StatusOr<Hypothesis> Soa::Predict(const SoaState& state) const {
  if (state.failed) {
    return absl::FailedPreconditionError("SOA queried in the failed state");
  }
  return PredictMask(state.version_class);
}

absl::StatusOr<Hypothesis> Soa::PredictMask(
    const BitVector& version_class) const {
  if (version_class.None()) {
    return absl::FailedPreconditionError("SOA queried on an empty class");
  }
  {
    absl::MutexLock lock(&mu_);
    if (auto it = predictions_.find(version_class); it != predictions_.end()) {
      return it->second;
    }
  }
  const size_t n = cls_->num_points();
  BitVector bits(n);
  for (size_t x = 0; x < n; ++x) {
    const int one = oracle_.Ldim(version_class & cls_->PositiveMask(x));
    const int zero = oracle_.Ldim(
        version_class & cls_->ConsistentMask({static_cast<int>(x), 0}));
    if (one > zero) bits.Set(x);
  }
  Hypothesis h(std::move(bits));
  absl::MutexLock lock(&mu_);
  predictions_.emplace(version_class, h);
  return h;
}

BitVector Soa::VersionClassOf(const std::vector<LabeledExample>& seq) const {
  BitVector mask = cls_->FullMask();
  for (const LabeledExample& e : seq) mask &= cls_->ConsistentMask(e);
  return mask;
}

}  // namespace dpol
