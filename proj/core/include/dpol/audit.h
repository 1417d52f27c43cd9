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

#ifndef DPOL_AUDIT_H_
#define DPOL_AUDIT_H_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "dpol/privacy_ledger.h"
#include "dpol/rng.h"

namespace dpol {

// Mechanism views are reduced to an integer outcome by the runner.
using AuditOutcome = int64_t;
using AuditRunner = std::function<absl::StatusOr<AuditOutcome>(Rng&)>;

struct NeighborPair {
  std::string name;
  AuditRunner first;
  AuditRunner second;
};

struct AuditEvent {
  std::string name;
  std::function<bool(AuditOutcome)> contains;
};

std::vector<AuditEvent> SingletonEvents(absl::Span<const AuditOutcome> values);
// Events {outcome >= c} for each cut c.
std::vector<AuditEvent> ThresholdEvents(absl::Span<const AuditOutcome> cuts);

struct AuditConfig {
  int64_t trials = 100000;
  // Family-wise confidence; split over every (pair, event, direction) test.
  double confidence = 0.95;
  PrivacyParams budget{1.0, 0.0};
  int workers = 0;
};

struct EventEstimate {
  std::string pair;
  std::string event;
  int64_t count_first = 0;
  int64_t count_second = 0;
  double epsilon_hat = 0;    // best direction, point estimate
  double epsilon_lower = 0;  // best direction, lower confidence bound
  bool uninformative = false;
};

struct AuditReport {
  double epsilon_hat = 0;
  double epsilon_lower = 0;
  double epsilon_upper = 0;  // upper bound for the maximizing event
  int64_t trials = 0;
  double confidence = 0;
  std::string family;
  std::vector<EventEstimate> events;
  int64_t uninformative_events = 0;
  bool uninformative = false;  // every event had degenerate frequencies
  bool violation = false;      // epsilon_lower exceeds the budget
};

struct ClopperPearson {
  double lower = 0;
  double upper = 1;
};

// One-sided bounds, each at level 1 - alpha.
ClopperPearson ClopperPearsonBounds(int64_t successes, int64_t trials,
                                    double alpha);

// Runs each side of each pair `trials` times and estimates
// max ln((p0 - delta) / p1) over the events, their complements and both
// directions.
absl::StatusOr<AuditReport> PrivacyAudit(absl::Span<const NeighborPair> pairs,
                                         absl::Span<const AuditEvent> family,
                                         const AuditConfig& config,
                                         const Rng& rng);

}  // namespace dpol

#endif  // DPOL_AUDIT_H_
