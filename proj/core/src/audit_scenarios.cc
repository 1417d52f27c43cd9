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

#include "dpol/audit_scenarios.h"

#include <cmath>
#include <map>
#include <memory>
#include <numeric>

#include "absl/strings/str_cat.h"
#include "dpol/above_threshold.h"
#include "dpol/class_io.h"
#include "dpol/game.h"
#include "dpol/histogram.h"
#include "dpol/mechanisms.h"
#include "dpol/soa.h"
#include "dpol/status_macros.h"

namespace dpol {
namespace {

std::vector<AuditOutcome> Range(AuditOutcome lo, AuditOutcome hi) {
  std::vector<AuditOutcome> v(hi - lo + 1);
  std::iota(v.begin(), v.end(), lo);
  return v;
}

AuditRunner RandomizedResponse(int bit, double epsilon) {
  const double keep = std::exp(epsilon) / (1 + std::exp(epsilon));
  return [bit, keep](Rng& rng) -> absl::StatusOr<AuditOutcome> {
    return rng.Bernoulli(keep) ? bit : 1 - bit;
  };
}

AuditRunner LaplaceCount(int64_t count, double epsilon, bool noisy) {
  return [count, epsilon, noisy](Rng& rng) -> absl::StatusOr<AuditOutcome> {
    double z = 0;
    if (noisy) {
      ASSIGN_OR_RETURN(z, LaplaceSample(1.0 / epsilon, rng));
    }
    return static_cast<AuditOutcome>(std::floor(count + z));
  };
}

// Halting round of AboveThreshold, or stream length + 1.
AuditRunner SvtHalt(std::vector<double> stream, double epsilon,
                    double threshold) {
  return
      [stream, epsilon, threshold](Rng& rng) -> absl::StatusOr<AuditOutcome> {
        ASSIGN_OR_RETURN(AboveThreshold svt,
                         AboveThreshold::Create(epsilon, threshold, rng));
        for (size_t i = 0; i < stream.size(); ++i) {
          ASSIGN_OR_RETURN(bool above, svt.Step(stream[i], rng));
          if (above) return static_cast<AuditOutcome>(i + 1);
        }
        return static_cast<AuditOutcome>(stream.size() + 1);
      };
}

// Bitmask of released keys 0..3.
AuditRunner HistogramMask(std::map<int, int> counts, PrivacyParams params) {
  std::vector<int> data;
  for (const auto& [k, c] : counts) data.insert(data.end(), c, k);
  return [data, params](Rng& rng) -> absl::StatusOr<AuditOutcome> {
    ASSIGN_OR_RETURN(HistogramRelease<int> release,
                     PrivateHistogram<int>(data, params, rng));
    AuditOutcome mask = 0;
    for (const auto& [k, v] : release.released()) mask |= AuditOutcome{1} << k;
    return mask;
  };
}

AuditRunner Exponential(std::vector<double> scores, double epsilon) {
  return [scores, epsilon](Rng& rng) -> absl::StatusOr<AuditOutcome> {
    ASSIGN_OR_RETURN(size_t i, ExponentialMechanism(scores, 1.0, epsilon, rng));
    return static_cast<AuditOutcome>(i);
  };
}

// First round (1-based) whose output differs from the round-1 output, or
// T + 1 when the output never changes.
AuditRunner LearnerSwitch(ClassPtr cls, RealizableConfig config,
                          std::vector<LabeledExample> stream) {
  return [cls, config, stream](Rng& rng) -> absl::StatusOr<AuditOutcome> {
    AdversarySpec spec;
    spec.kind = AdversaryKind::kObliviousFixed;
    spec.sequence = stream;
    RealizableConfig c = config;
    c.T = static_cast<int64_t>(stream.size());
    ASSIGN_OR_RETURN(GameTranscript t, RunRealizable(cls, c, spec, rng));
    for (size_t r = 1; r < t.rounds.size(); ++r) {
      if (t.rounds[r].hypothesis != t.rounds[0].hypothesis) {
        return static_cast<AuditOutcome>(r + 1);
      }
    }
    return static_cast<AuditOutcome>(c.T + 1);
  };
}

}  // namespace

std::vector<std::string> AuditMechanisms() {
  return {"randomized-response", "laplace",    "svt",     "histogram",
          "exponential",         "realizable", "no-noise"};
}

absl::StatusOr<AuditScenario> MakeAuditScenario(
    const std::string& mechanism, const AuditScenarioOptions& options) {
  RETURN_IF_ERROR(ValidatePrivacyParams(options.params));
  const double eps = options.params.epsilon;
  AuditScenario s;
  s.mechanism = mechanism;
  s.budget = {eps, 0.0};
  if (mechanism == "randomized-response") {
    s.family = "output bit";
    s.pairs = {{"0|1", RandomizedResponse(0, eps), RandomizedResponse(1, eps)},
               {"1|0", RandomizedResponse(1, eps), RandomizedResponse(0, eps)},
               {"0|0", RandomizedResponse(0, eps), RandomizedResponse(0, eps)}};
    s.events = SingletonEvents(Range(0, 1));
  } else if (mechanism == "laplace" || mechanism == "no-noise") {
    const bool noisy = mechanism == "laplace";
    s.family = "output >= c";
    s.pairs = {
        {"0|1", LaplaceCount(0, eps, noisy), LaplaceCount(1, eps, noisy)},
        {"5|6", LaplaceCount(5, eps, noisy), LaplaceCount(6, eps, noisy)},
        {"10|9", LaplaceCount(10, eps, noisy), LaplaceCount(9, eps, noisy)}};
    s.events = ThresholdEvents(Range(-4, 14));
  } else if (mechanism == "svt") {
    const int64_t len = 20;
    std::vector<double> base(len, 0.0);
    for (int64_t i = 0; i < len; i += 2) base[i] = 1.0;
    std::vector<double> up = base;
    up[1] = 1.0;
    std::vector<double> down = base;
    down[0] = 0.0;
    std::vector<double> late = base;
    late[len - 1] = 1.0;
    const double tau = 5;
    s.family = "halt round >= c";
    s.pairs = {{"b|b+e2", SvtHalt(base, eps, tau), SvtHalt(up, eps, tau)},
               {"b|b-e1", SvtHalt(base, eps, tau), SvtHalt(down, eps, tau)},
               {"b+e20|b", SvtHalt(late, eps, tau), SvtHalt(base, eps, tau)}};
    s.events = ThresholdEvents(Range(2, len + 1));
  } else if (mechanism == "histogram") {
    ASSIGN_OR_RETURN(HistogramCalibration cal,
                     CalibrateHistogram(options.params));
    const int k = static_cast<int>(cal.release_threshold);
    s.budget = options.params;
    s.family = "released key set";
    s.pairs = {{"k|k+1", HistogramMask({{0, k}}, options.params),
                HistogramMask({{0, k + 1}}, options.params)},
               {"k-1,k+2|k-1,k+1",
                HistogramMask({{0, k - 1}, {1, k + 2}}, options.params),
                HistogramMask({{0, k - 1}, {1, k + 1}}, options.params)},
               {"1|0", HistogramMask({{0, 1}, {2, k}}, options.params),
                HistogramMask({{2, k}}, options.params)}};
    s.events = SingletonEvents(Range(0, 15));
  } else if (mechanism == "exponential") {
    s.family = "selected index";
    s.pairs = {
        {"012|102", Exponential({0, 1, 2}, eps), Exponential({1, 0, 2}, eps)},
        {"000|100", Exponential({0, 0, 0}, eps), Exponential({1, 0, 0}, eps)},
        {"021|111", Exponential({0, 2, 1}, eps), Exponential({1, 1, 1}, eps)}};
    s.events = SingletonEvents(Range(0, 2));
  } else if (mechanism == "realizable") {
    ASSIGN_OR_RETURN(ConceptClass c, LoadClass(options.class_spec));
    auto cls = std::make_shared<const ConceptClass>(std::move(c));
    RealizableConfig config = options.learner;
    config.params = options.params;
    s.budget = options.params;
    s.family = "first switch round >= c";
    const int64_t T = std::max<int64_t>(config.T, 2);
    const int n = static_cast<int>(cls->num_points());
    // Concept 0 repeated on a point where it disagrees with SOA of the empty
    // history, so every round is a mistake until the first switch.
    Soa soa(cls);
    ASSIGN_OR_RETURN(Hypothesis initial, soa.Predict(soa.Initial()));
    int x0 = 0;
    while (x0 + 1 < n && initial(x0) == cls->concept_at(0)(x0)) ++x0;
    const std::vector<LabeledExample> base(T, {x0, cls->concept_at(0)(x0)});
    std::vector<std::pair<std::string, int64_t>> swaps = {
        {"first", 0}, {"middle", T / 2}, {"last", T - 1}};
    for (const auto& [name, at] : swaps) {
      std::vector<LabeledExample> other = base;
      const int x = (base[at].point + 1) % n;
      other[at] = {x, cls->concept_at(0)(x)};
      s.pairs.push_back({name, LearnerSwitch(cls, config, base),
                         LearnerSwitch(cls, config, other)});
    }
    std::vector<AuditOutcome> cuts;
    for (int64_t c = T / 2; c <= T + 1; ++c) cuts.push_back(c);
    s.events = ThresholdEvents(cuts);
  } else {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown audit mechanism '", mechanism, "'"));
  }
  return s;
}

}  // namespace dpol
