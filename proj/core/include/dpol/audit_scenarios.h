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

#ifndef DPOL_AUDIT_SCENARIOS_H_
#define DPOL_AUDIT_SCENARIOS_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "dpol/audit.h"
#include "dpol/privacy_ledger.h"
#include "dpol/realizable_learner.h"

namespace dpol {

struct AuditScenarioOptions {
  PrivacyParams params{1.0, 1e-6};
  // Realizable learner scenario.
  std::string class_spec = "point:4";
  RealizableConfig learner{.T = 600, .N0 = 512};
};

// Neighbor pairs, event family and claimed budget for one mechanism.
struct AuditScenario {
  std::string mechanism;
  std::string family;
  std::vector<NeighborPair> pairs;
  std::vector<AuditEvent> events;
  PrivacyParams budget;
};

// Mechanisms: randomized-response, laplace, svt, histogram, exponential,
// realizable, no-noise.
absl::StatusOr<AuditScenario> MakeAuditScenario(
    const std::string& mechanism, const AuditScenarioOptions& options);

std::vector<std::string> AuditMechanisms();

}  // namespace dpol

#endif  // DPOL_AUDIT_SCENARIOS_H_
