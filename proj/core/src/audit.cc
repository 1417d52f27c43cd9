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

#include "dpol/audit.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "boost/math/distributions/beta.hpp"
#include "dpol/parallel.h"
#include "dpol/status_macros.h"

namespace dpol {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double LogRatio(double p0, double p1, double delta) {
  const double num = p0 - delta;
  if (num <= 0) return -kInf;
  if (p1 <= 0) return kInf;
  return std::log(num / p1);
}

struct Direction {
  double hat;
  double lower;
  double upper;
};

// Estimates for ln((p_a - delta) / p_b) from counts out of k trials.
Direction Estimate(int64_t a, int64_t b, int64_t k, double delta,
                   double alpha) {
  const double n = static_cast<double>(k);
  // Zero counts get half a success so the point estimate stays finite.
  const double pa = a / n;
  const double pb = b == 0 ? 0.5 / n : b / n;
  const ClopperPearson ca = ClopperPearsonBounds(a, k, alpha);
  const ClopperPearson cb = ClopperPearsonBounds(b, k, alpha);
  return {LogRatio(pa, pb, delta), LogRatio(ca.lower, cb.upper, delta),
          LogRatio(ca.upper, cb.lower, delta)};
}

absl::StatusOr<std::vector<AuditOutcome>> Sample(const AuditRunner& runner,
                                                 int64_t trials, int workers,
                                                 const Rng& rng) {
  std::vector<AuditOutcome> out(trials);
  RETURN_IF_ERROR(
      RunTrials(trials, workers, rng, [&](int64_t i, Rng& r) -> absl::Status {
        ASSIGN_OR_RETURN(out[i], runner(r));
        return absl::OkStatus();
      }));
  return out;
}

}  // namespace

std::vector<AuditEvent> SingletonEvents(absl::Span<const AuditOutcome> values) {
  std::vector<AuditEvent> family;
  for (AuditOutcome v : values) {
    family.push_back(
        {absl::StrCat("=", v), [v](AuditOutcome o) { return o == v; }});
  }
  return family;
}

std::vector<AuditEvent> ThresholdEvents(absl::Span<const AuditOutcome> cuts) {
  std::vector<AuditEvent> family;
  for (AuditOutcome c : cuts) {
    family.push_back(
        {absl::StrCat(">=", c), [c](AuditOutcome o) { return o >= c; }});
  }
  return family;
}

ClopperPearson ClopperPearsonBounds(int64_t successes, int64_t trials,
                                    double alpha) {
  ClopperPearson cp;
  if (trials <= 0) return cp;
  const double k = static_cast<double>(successes);
  const double n = static_cast<double>(trials);
  if (successes > 0) {
    boost::math::beta_distribution<double> lo(k, n - k + 1);
    cp.lower = boost::math::quantile(lo, alpha);
  }
  if (successes < trials) {
    boost::math::beta_distribution<double> hi(k + 1, n - k);
    cp.upper = boost::math::quantile(hi, 1 - alpha);
  }
  return cp;
}

absl::StatusOr<AuditReport> PrivacyAudit(absl::Span<const NeighborPair> pairs,
                                         absl::Span<const AuditEvent> family,
                                         const AuditConfig& config,
                                         const Rng& rng) {
  if (config.trials < 1000) {
    return absl::InvalidArgumentError("audit needs at least 1000 trials");
  }
  if (pairs.empty() || family.empty()) {
    return absl::InvalidArgumentError("audit needs neighbor pairs and events");
  }
  if (!(config.confidence > 0 && config.confidence < 1)) {
    return absl::InvalidArgumentError("confidence must lie in (0, 1)");
  }
  const int64_t k = config.trials;
  const double delta = config.budget.delta;
  // Each event is tested with its complement in both directions.
  const double tests = 4.0 * static_cast<double>(pairs.size() * family.size());
  const double alpha = (1 - config.confidence) / tests;

  AuditReport report;
  report.trials = k;
  report.confidence = config.confidence;
  std::vector<std::string> names;
  for (const AuditEvent& e : family) names.push_back(e.name);
  report.family = absl::StrJoin(names, ",");
  report.epsilon_hat = -kInf;
  report.epsilon_lower = -kInf;
  report.epsilon_upper = -kInf;
  double best_hat = -kInf;

  for (size_t p = 0; p < pairs.size(); ++p) {
    const NeighborPair& pair = pairs[p];
    ASSIGN_OR_RETURN(std::vector<AuditOutcome> first,
                     Sample(pair.first, k, config.workers, rng.Fork(2 * p)));
    ASSIGN_OR_RETURN(
        std::vector<AuditOutcome> second,
        Sample(pair.second, k, config.workers, rng.Fork(2 * p + 1)));
    for (const AuditEvent& event : family) {
      EventEstimate est;
      est.pair = pair.name;
      est.event = event.name;
      est.count_first =
          std::count_if(first.begin(), first.end(), event.contains);
      est.count_second =
          std::count_if(second.begin(), second.end(), event.contains);
      const int64_t a = est.count_first;
      const int64_t b = est.count_second;
      est.uninformative = (a == 0 && b == 0) || (a == k && b == k);
      est.epsilon_hat = -kInf;
      est.epsilon_lower = -kInf;
      if (est.uninformative) {
        ++report.uninformative_events;
        report.events.push_back(est);
        continue;
      }
      const Direction dirs[] = {Estimate(a, b, k, delta, alpha),
                                Estimate(b, a, k, delta, alpha),
                                Estimate(k - a, k - b, k, delta, alpha),
                                Estimate(k - b, k - a, k, delta, alpha)};
      for (const Direction& d : dirs) {
        est.epsilon_hat = std::max(est.epsilon_hat, d.hat);
        est.epsilon_lower = std::max(est.epsilon_lower, d.lower);
        if (d.hat > best_hat) {
          best_hat = d.hat;
          report.epsilon_upper = d.upper;
        }
      }
      report.epsilon_hat = std::max(report.epsilon_hat, est.epsilon_hat);
      report.epsilon_lower = std::max(report.epsilon_lower, est.epsilon_lower);
      report.events.push_back(est);
    }
  }
  report.uninformative =
      report.uninformative_events == static_cast<int64_t>(report.events.size());
  if (report.uninformative) {
    report.epsilon_hat = 0;
    report.epsilon_lower = 0;
    report.epsilon_upper = 0;
  }
  // Both-ways estimates of identical distributions are ~0 with noise; the
  // reported bounds never go below zero.
  report.epsilon_hat = std::max(report.epsilon_hat, 0.0);
  report.epsilon_lower = std::max(report.epsilon_lower, 0.0);
  report.epsilon_upper = std::max(report.epsilon_upper, report.epsilon_hat);
  report.violation = report.epsilon_lower > config.budget.epsilon + 1e-12;
  return report;
}

}  // namespace dpol
