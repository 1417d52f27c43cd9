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

#ifndef DPOL_PRIVACY_LEDGER_H_
#define DPOL_PRIVACY_LEDGER_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/types/span.h"

namespace dpol {

struct PrivacyParams {
  double epsilon = 0;
  double delta = 0;

  friend bool operator==(const PrivacyParams& a, const PrivacyParams& b) {
    return a.epsilon == b.epsilon && a.delta == b.delta;
  }
};

// epsilon > 0 and 0 <= delta < 1.
absl::Status ValidatePrivacyParams(const PrivacyParams& p);

// Sum of epsilons and deltas.
PrivacyParams ComposeBasic(absl::Span<const PrivacyParams> block);

// k-fold adaptive composition of (eps, delta) mechanisms with slack
// delta_slack: (eps sqrt(2k ln(1/delta_slack)) + k eps (e^eps - 1),
// k delta + delta_slack).
PrivacyParams AdvancedComposition(double epsilon, double delta, int64_t k,
                                  double delta_slack);
// Advanced composition over a heterogeneous block, using the largest
// per-entry epsilon and delta.
PrivacyParams ComposeAdvanced(absl::Span<const PrivacyParams> block,
                              double delta_slack);
// Largest per-step epsilon whose k-fold advanced composition (with zero
// per-step delta) stays within total_epsilon.
double AdvancedPerStepEpsilon(double total_epsilon, int64_t k,
                              double delta_slack);

struct LedgerEntry {
  std::string mechanism;
  PrivacyParams params;
  std::string tag;
  int64_t step = 0;
  // Set when this entry summarizes an advanced-composition block.
  int64_t block_size = 0;
  PrivacyParams per_step;
  double delta_slack = 0;
};

// Record of every privacy charge made by a run.
class PrivacyLedger {
 public:
  void Charge(std::string mechanism, PrivacyParams params, std::string tag,
              int64_t step = 0);
  // Charges one entry holding the advanced composition of k steps.
  PrivacyParams ChargeAdvancedBlock(std::string mechanism,
                                    PrivacyParams per_step, int64_t k,
                                    double delta_slack, std::string tag,
                                    int64_t step = 0);
  // Charges `budget` for k steps run at AdvancedPerStepEpsilon(budget, k,
  // budget.delta) each, or budget.epsilon / k when delta is 0; returns the
  // per-step epsilon.
  double ChargeAdvancedBudget(std::string mechanism, PrivacyParams budget,
                              int64_t k, std::string tag, int64_t step = 0);
  void Append(const PrivacyLedger& other);

  const std::vector<LedgerEntry>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  PrivacyParams Composed() const;

  // JSON array of {mechanism, epsilon, delta, tag, step} records.
  std::string ToJson() const;
  static absl::StatusOr<PrivacyLedger> FromJson(const std::string& text);

  friend bool operator==(const PrivacyLedger& a, const PrivacyLedger& b);

 private:
  std::vector<LedgerEntry> entries_;
};

}  // namespace dpol

#endif  // DPOL_PRIVACY_LEDGER_H_
