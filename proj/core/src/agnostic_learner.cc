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

#include "dpol/agnostic_learner.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpol/mechanisms.h"
#include "dpol/status_macros.h"

namespace dpol {
namespace {

absl::Status CheckDomain(absl::Span<const Hypothesis> candidates,
                         absl::Span<const LabeledExample> data) {
  if (candidates.empty()) return absl::InvalidArgumentError("no candidates");
  const size_t n = candidates.front().size();
  for (const Hypothesis& h : candidates) {
    if (h.size() != n) {
      return absl::InvalidArgumentError("candidates differ in domain size");
    }
  }
  for (const LabeledExample& e : data) {
    if (e.point < 0 || static_cast<size_t>(e.point) >= n) {
      return absl::OutOfRangeError(
          absl::StrCat("example point ", e.point, " outside the domain"));
    }
  }
  return absl::OkStatus();
}

}  // namespace

double EmpiricalError(const Hypothesis& h,
                      absl::Span<const LabeledExample> data) {
  if (data.empty()) return 0;
  int64_t wrong = 0;
  for (const LabeledExample& e : data) wrong += h(e.point) != e.label;
  return static_cast<double>(wrong) / data.size();
}

std::vector<size_t> ProjectionRepresentatives(
    absl::Span<const Hypothesis> candidates, absl::Span<const int> points) {
  std::vector<int> distinct(points.begin(), points.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::map<std::vector<int>, size_t> seen;
  std::vector<size_t> reps;
  for (size_t i = 0; i < candidates.size(); ++i) {
    std::vector<int> pattern;
    pattern.reserve(distinct.size());
    for (int x : distinct) pattern.push_back(candidates[i](x));
    if (seen.emplace(std::move(pattern), i).second) reps.push_back(i);
  }
  return reps;
}

std::vector<double> AgnosticScores(absl::Span<const Hypothesis> candidates,
                                   absl::Span<const size_t> reps,
                                   absl::Span<const LabeledExample> data,
                                   absl::Span<const int> subset_points) {
  std::vector<double> err(candidates.size());
  for (size_t f = 0; f < candidates.size(); ++f) {
    err[f] = EmpiricalError(candidates[f], data);
  }
  std::map<int, int64_t> subset_counts;
  for (int x : subset_points) ++subset_counts[x];
  const double m = std::max<size_t>(1, subset_points.size());
  std::vector<double> scores;
  scores.reserve(reps.size());
  for (size_t h : reps) {
    double best = std::numeric_limits<double>::infinity();
    for (size_t f = 0; f < candidates.size(); ++f) {
      int64_t dis = 0;
      for (const auto& [x, c] : subset_counts) {
        if (candidates[h](x) != candidates[f](x)) dis += c;
      }
      best = std::min(best, dis / m + err[f]);
    }
    scores.push_back(best);
  }
  return scores;
}

absl::StatusOr<size_t> PrivateErm(absl::Span<const Hypothesis> candidates,
                                  absl::Span<const LabeledExample> data,
                                  double epsilon, Rng& rng) {
  RETURN_IF_ERROR(CheckDomain(candidates, data));
  if (data.empty()) return absl::InvalidArgumentError("empty dataset");
  std::vector<double> scores;
  scores.reserve(candidates.size());
  for (const Hypothesis& h : candidates) {
    scores.push_back(EmpiricalError(h, data));
  }
  return ExponentialMechanism(scores, 1.0 / data.size(), epsilon, rng);
}

double SubsampledEpsilon(double target, double rate) {
  if (rate >= 1) return target;
  return std::log1p(std::expm1(target) / rate);
}

absl::StatusOr<AgnosticLearnResult> AgnosticEmpiricalLearn(
    absl::Span<const LabeledExample> data,
    absl::Span<const Hypothesis> candidates, double epsilon, Rng& rng) {
  RETURN_IF_ERROR(CheckDomain(candidates, data));
  if (data.empty()) return absl::InvalidArgumentError("empty dataset");
  if (!(epsilon > 0)) return absl::InvalidArgumentError("epsilon must be > 0");
  const size_t n = data.size();
  if (n * epsilon < 1) {
    return absl::FailedPreconditionError(absl::StrCat(
        "agnostic learner needs n >= 1/epsilon = ", std::ceil(1 / epsilon),
        ", got ", n));
  }
  AgnosticLearnResult result;
  if (candidates.size() == 1) {
    result.subset_size = 0;
    result.representatives = 1;
    return result;
  }
  const size_t m = std::min(
      n, static_cast<size_t>(std::ceil(epsilon * static_cast<double>(n))));
  result.subset_size = m;

  // Uniform m-subset of indices by a partial Fisher-Yates shuffle.
  std::vector<size_t> idx(n);
  for (size_t i = 0; i < n; ++i) idx[i] = i;
  for (size_t i = 0; i < m; ++i) {
    std::swap(idx[i], idx[i + rng.UniformInt(n - i)]);
  }
  idx.resize(m);
  std::sort(idx.begin(), idx.end());
  std::vector<int> subset_points;
  subset_points.reserve(m);
  for (size_t i : idx) subset_points.push_back(data[i].point);

  const std::vector<size_t> reps =
      ProjectionRepresentatives(candidates, subset_points);
  result.representatives = reps.size();
  const std::vector<double> scores =
      AgnosticScores(candidates, reps, data, subset_points);
  ASSIGN_OR_RETURN(size_t pick,
                   ExponentialMechanism(scores, 1.0 / n, epsilon / 2, rng));
  result.relabeling_index = reps[pick];
  const Hypothesis& h0 = candidates[reps[pick]];

  std::vector<LabeledExample> relabeled;
  relabeled.reserve(m);
  for (int x : subset_points) relabeled.push_back({x, h0(x)});
  result.inner_epsilon = SubsampledEpsilon(
      epsilon / 2, static_cast<double>(m) / static_cast<double>(n));
  ASSIGN_OR_RETURN(result.index, PrivateErm(candidates, relabeled,
                                            result.inner_epsilon, rng));
  return result;
}

}  // namespace dpol
