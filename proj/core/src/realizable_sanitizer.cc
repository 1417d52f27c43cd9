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

#include "dpol/realizable_sanitizer.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpol/compose.h"
#include "dpol/dimensions.h"
#include "dpol/discriminator.h"
#include "dpol/histogram.h"
#include "dpol/soa.h"
#include "dpol/status_macros.h"

namespace dpol {
namespace {

absl::StatusOr<RealizableSanitizerResult> Direct(
    absl::Span<const int> points, const ConceptClass& cls,
    const PrivacyParams& params, const RealizableSanitizerConfig& config,
    Rng& rng) {
  ASSIGN_OR_RETURN(HistogramRelease<int> release,
                   PrivateHistogram<int>(points, params, rng));
  RealizableSanitizerResult r;
  r.ledger.Charge("private-histogram", params, "realizable sanitizer");
  const double n = static_cast<double>(points.size());
  r.noisy_counts.assign(cls.num_points(), 0.0);
  for (const auto& [x, c] : release.released()) r.noisy_counts[x] = c;
  r.output.kind = SanitizerKind::kRealizableBinary;
  r.output.alpha = std::max(
      config.alpha, config.alpha / 2 + cls.num_points() * release.bound() / n);
  r.output.est.resize(cls.size());
  for (size_t i = 0; i < cls.size(); ++i) {
    double sum = 0;
    for (size_t x = 0; x < cls.num_points(); ++x) {
      if (cls.concept_at(i)(x)) sum += r.noisy_counts[x];
    }
    r.output.est[i] = sum / n >= config.alpha / 2 ? 1.0 : 0.0;
  }
  return r;
}

absl::StatusOr<RealizableSanitizerResult> Fooling(
    absl::Span<const int> points, const ConceptClass& cls,
    const PrivacyParams& params, const RealizableSanitizerConfig& config,
    Rng& rng) {
  if (cls.num_points() > kFoolingMaxPoints || config.m > kFoolingMaxTuple ||
      cls.size() > kFoolingMaxConcepts || config.m == 0) {
    return absl::ResourceExhaustedError(absl::StrCat(
        "fooling mode is capped at |X| <= ", kFoolingMaxPoints,
        ", 1 <= m <= ", kFoolingMaxTuple, ", |H| <= ", kFoolingMaxConcepts));
  }
  if (params.delta <= 0) {
    return absl::InvalidArgumentError("fooling mode requires delta > 0");
  }
  ASSIGN_OR_RETURN(ConceptClass generator_class,
                   ThresholdFractionClass(cls, config.m, config.alpha / 2));
  auto gen = std::make_shared<const ConceptClass>(std::move(generator_class));
  const int64_t rounds = LittlestoneDimension(*gen) + 1;
  const PrivacyParams per_round = FoolingRoundBudget(params, rounds);

  RealizableSanitizerResult r;
  r.max_rounds = rounds;
  r.output.kind = SanitizerKind::kRealizableBinary;
  r.output.alpha = config.alpha;
  r.ledger.ChargeAdvancedBlock("realizable-discriminator", per_round, rounds,
                               params.delta / 2, "fooling game");

  Soa soa(gen);
  SoaState state = soa.Initial();
  const double beta = config.beta / static_cast<double>(rounds);
  for (int64_t t = 1; t <= rounds; ++t) {
    if (state.failed) break;
    ASSIGN_OR_RETURN(Hypothesis q, soa.Predict(state));
    std::vector<int> q_t(cls.size());
    for (size_t i = 0; i < cls.size(); ++i) q_t[i] = q(i);
    ASSIGN_OR_RETURN(RealizableDiscriminatorResult d,
                     DiscriminateRealizable(points, cls, q_t, per_round,
                                            config.alpha, beta, rng));
    r.rounds = t;
    if (d.win) {
      r.output.est.assign(q_t.begin(), q_t.end());
      return r;
    }
    state = soa.Step(std::move(state), {static_cast<int>(d.hypothesis), d.bit});
  }
  return absl::AbortedError(
      absl::StrCat("fooling game ended without WIN after ", r.rounds, " of ",
                   rounds, " rounds"));
}

}  // namespace

PrivacyParams FoolingRoundBudget(const PrivacyParams& params, int64_t rounds) {
  const double k = static_cast<double>(rounds);
  return {params.epsilon / (2 * std::sqrt(2 * k * std::log(2 / params.delta))),
          params.delta / (2 * k)};
}

absl::StatusOr<RealizableSanitizerResult> RealizableSanitize(
    absl::Span<const int> points, const ConceptClass& cls,
    const PrivacyParams& params, const RealizableSanitizerConfig& config,
    Rng& rng) {
  RETURN_IF_ERROR(ValidatePrivacyParams(params));
  if (points.empty()) return absl::InvalidArgumentError("empty dataset");
  for (int x : points) {
    if (x < 0 || static_cast<size_t>(x) >= cls.num_points()) {
      return absl::OutOfRangeError(
          absl::StrCat("point ", x, " outside domain"));
    }
  }
  if (!(config.alpha > 0 && config.alpha <= 1)) {
    return absl::InvalidArgumentError("alpha must lie in (0, 1]");
  }
  if (config.mode == RealizableMode::kDirect) {
    return Direct(points, cls, params, config, rng);
  }
  return Fooling(points, cls, params, config, rng);
}

std::vector<std::optional<int>> RealizableSyntheticSequence(
    absl::Span<const double> noisy_counts, size_t n) {
  std::vector<std::optional<int>> out;
  out.reserve(n);
  std::vector<size_t> released;
  double total = 0;
  for (size_t x = 0; x < noisy_counts.size(); ++x) {
    if (noisy_counts[x] > 0) {
      released.push_back(x);
      total += noisy_counts[x];
    }
  }
  if (released.empty() || n == 0) {
    out.assign(n, std::nullopt);
    return out;
  }
  // One copy of each released point first, then the rest by largest
  // remainder.
  std::vector<int64_t> units(released.size(), 0);
  int64_t left = static_cast<int64_t>(n);
  for (size_t i = 0; i < released.size() && left > 0; ++i, --left) units[i] = 1;
  std::vector<std::pair<double, size_t>> remainders;
  const int64_t extra = left;
  for (size_t i = 0; i < released.size(); ++i) {
    const double exact = extra * noisy_counts[released[i]] / total;
    const int64_t whole = static_cast<int64_t>(std::floor(exact));
    units[i] += whole;
    left -= whole;
    remainders.emplace_back(exact - whole, i);
  }
  std::stable_sort(
      remainders.begin(), remainders.end(),
      [](const auto& a, const auto& b) { return a.first > b.first; });
  for (size_t k = 0; left > 0; ++k, --left) {
    ++units[remainders[k % remainders.size()].second];
  }
  for (size_t i = 0; i < released.size(); ++i) {
    out.insert(out.end(), units[i], static_cast<int>(released[i]));
  }
  out.resize(n);
  return out;
}

}  // namespace dpol
