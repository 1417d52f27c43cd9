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

#ifndef DPOL_LEARNER_H_
#define DPOL_LEARNER_H_

#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpol/concept_class.h"
#include "dpol/privacy_ledger.h"
#include "dpol/rng.h"

namespace dpol {

// A player of the online game. Each round the harness first asks for the
// hypothesis h_t, then reveals the example (x_t, y_t).
class OnlineLearner {
 public:
  virtual ~OnlineLearner() = default;

  virtual absl::StatusOr<Hypothesis> Predict(Rng& rng) = 0;
  virtual absl::Status Observe(const LabeledExample& example, Rng& rng) = 0;

  // A halted learner keeps answering with a fallback hypothesis; runs that
  // continue past the halt are flagged as degraded.
  virtual bool halted() const { return false; }
  virtual const PrivacyLedger& ledger() const { return empty_ledger_; }
  virtual std::string name() const = 0;

 private:
  PrivacyLedger empty_ledger_;
};

// Outputs the same hypothesis forever.
class FixedLearner : public OnlineLearner {
 public:
  explicit FixedLearner(Hypothesis h) : h_(std::move(h)) {}
  absl::StatusOr<Hypothesis> Predict(Rng&) override { return h_; }
  absl::Status Observe(const LabeledExample&, Rng&) override {
    return absl::OkStatus();
  }
  std::string name() const override { return "fixed"; }

 private:
  Hypothesis h_;
};

// Non-private consistent learner: predicts with the lowest-index concept of
// the class that is consistent with every example seen (or concept 0 once
// none is).
class MemorizingLearner : public OnlineLearner {
 public:
  explicit MemorizingLearner(ClassPtr cls);
  absl::StatusOr<Hypothesis> Predict(Rng&) override;
  absl::Status Observe(const LabeledExample& example, Rng&) override;
  std::string name() const override { return "memorizing"; }

 private:
  ClassPtr cls_;
  BitVector version_;
};

}  // namespace dpol

#endif  // DPOL_LEARNER_H_
