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

#include "dpol/privacy_ledger.h"

#include <algorithm>
#include <cmath>
#include <utility>

#include "absl/strings/str_cat.h"
#include "nlohmann/json.hpp"

namespace dpol {

absl::Status ValidatePrivacyParams(const PrivacyParams& p) {
  if (!(p.epsilon > 0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be positive, got ", p.epsilon));
  }
  if (!(p.delta >= 0 && p.delta < 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in [0, 1), got ", p.delta));
  }
  return absl::OkStatus();
}

PrivacyParams ComposeBasic(absl::Span<const PrivacyParams> block) {
  PrivacyParams total;
  for (const PrivacyParams& p : block) {
    total.epsilon += p.epsilon;
    total.delta += p.delta;
  }
  return total;
}

PrivacyParams AdvancedComposition(double epsilon, double delta, int64_t k,
                                  double delta_slack) {
  if (k == 0) return {};
  const double kd = static_cast<double>(k);
  return {epsilon * std::sqrt(2 * kd * std::log(1 / delta_slack)) +
              kd * epsilon * std::expm1(epsilon),
          kd * delta + delta_slack};
}

PrivacyParams ComposeAdvanced(absl::Span<const PrivacyParams> block,
                              double delta_slack) {
  if (block.empty()) return {};
  double eps = 0;
  double delta = 0;
  for (const PrivacyParams& p : block) {
    eps = std::max(eps, p.epsilon);
    delta = std::max(delta, p.delta);
  }
  return AdvancedComposition(eps, delta, static_cast<int64_t>(block.size()),
                             delta_slack);
}

double AdvancedPerStepEpsilon(double total_epsilon, int64_t k,
                              double delta_slack) {
  double lo = 0;
  double hi = total_epsilon;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (AdvancedComposition(mid, 0, k, delta_slack).epsilon <= total_epsilon) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

void PrivacyLedger::Charge(std::string mechanism, PrivacyParams params,
                           std::string tag, int64_t step) {
  LedgerEntry e;
  e.mechanism = std::move(mechanism);
  e.params = params;
  e.tag = std::move(tag);
  e.step = step;
  entries_.push_back(std::move(e));
}

PrivacyParams PrivacyLedger::ChargeAdvancedBlock(std::string mechanism,
                                                 PrivacyParams per_step,
                                                 int64_t k, double delta_slack,
                                                 std::string tag,
                                                 int64_t step) {
  LedgerEntry e;
  e.mechanism = std::move(mechanism);
  e.params =
      AdvancedComposition(per_step.epsilon, per_step.delta, k, delta_slack);
  e.tag = std::move(tag);
  e.step = step;
  e.block_size = k;
  e.per_step = per_step;
  e.delta_slack = delta_slack;
  entries_.push_back(e);
  return e.params;
}

double PrivacyLedger::ChargeAdvancedBudget(std::string mechanism,
                                           PrivacyParams budget, int64_t k,
                                           std::string tag, int64_t step) {
  LedgerEntry e;
  e.mechanism = std::move(mechanism);
  e.params = budget;
  e.tag = std::move(tag);
  e.step = step;
  e.block_size = k;
  e.delta_slack = budget.delta;
  // Without a delta slack only basic composition applies.
  const double per_step =
      budget.delta > 0
          ? AdvancedPerStepEpsilon(budget.epsilon, k, budget.delta)
          : budget.epsilon / static_cast<double>(std::max<int64_t>(k, 1));
  e.per_step = {per_step, 0};
  entries_.push_back(e);
  return e.per_step.epsilon;
}

void PrivacyLedger::Append(const PrivacyLedger& other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

PrivacyParams PrivacyLedger::Composed() const {
  PrivacyParams total;
  for (const LedgerEntry& e : entries_) {
    total.epsilon += e.params.epsilon;
    total.delta += e.params.delta;
  }
  return total;
}

std::string PrivacyLedger::ToJson() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const LedgerEntry& e : entries_) {
    nlohmann::json rec = {{"mechanism", e.mechanism},
                          {"epsilon", e.params.epsilon},
                          {"delta", e.params.delta},
                          {"tag", e.tag},
                          {"step", e.step}};
    if (e.block_size > 0) {
      rec["block_size"] = e.block_size;
      rec["per_step_epsilon"] = e.per_step.epsilon;
      rec["per_step_delta"] = e.per_step.delta;
      rec["delta_slack"] = e.delta_slack;
    }
    arr.push_back(std::move(rec));
  }
  return arr.dump();
}

absl::StatusOr<PrivacyLedger> PrivacyLedger::FromJson(const std::string& text) {
  nlohmann::json arr = nlohmann::json::parse(text, nullptr, false);
  if (arr.is_discarded() || !arr.is_array()) {
    return absl::InvalidArgumentError("ledger JSON must be an array");
  }
  PrivacyLedger ledger;
  for (const auto& rec : arr) {
    LedgerEntry e;
    e.mechanism = rec.value("mechanism", "");
    e.params = {rec.value("epsilon", 0.0), rec.value("delta", 0.0)};
    e.tag = rec.value("tag", "");
    e.step = rec.value("step", int64_t{0});
    e.block_size = rec.value("block_size", int64_t{0});
    e.per_step = {rec.value("per_step_epsilon", 0.0),
                  rec.value("per_step_delta", 0.0)};
    e.delta_slack = rec.value("delta_slack", 0.0);
    ledger.entries_.push_back(std::move(e));
  }
  return ledger;
}

bool operator==(const PrivacyLedger& a, const PrivacyLedger& b) {
  if (a.entries_.size() != b.entries_.size()) return false;
  for (size_t i = 0; i < a.entries_.size(); ++i) {
    const LedgerEntry& x = a.entries_[i];
    const LedgerEntry& y = b.entries_[i];
    if (x.mechanism != y.mechanism || !(x.params == y.params) ||
        x.tag != y.tag || x.step != y.step || x.block_size != y.block_size) {
      return false;
    }
  }
  return true;
}

}  // namespace dpol
