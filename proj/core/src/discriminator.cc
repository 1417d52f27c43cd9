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

#include "dpol/discriminator.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpol/agnostic_learner.h"
#include "dpol/mechanisms.h"
#include "dpol/sanitizer.h"
#include "dpol/status_macros.h"

namespace dpol {
namespace {

absl::Status CheckInputs(absl::Span<const int> points, const ConceptClass& cls,
                         const PrivacyParams& params, double alpha,
                         double beta) {
  RETURN_IF_ERROR(ValidatePrivacyParams(params));
  if (points.empty()) return absl::InvalidArgumentError("empty dataset");
  for (int x : points) {
    if (x < 0 || static_cast<size_t>(x) >= cls.num_points()) {
      return absl::OutOfRangeError(
          absl::StrCat("point ", x, " outside domain"));
    }
  }
  if (!(alpha > 0 && alpha <= 1)) {
    return absl::InvalidArgumentError("alpha must lie in (0, 1]");
  }
  if (!(beta > 0 && beta < 1)) {
    return absl::InvalidArgumentError("beta must lie in (0, 1)");
  }
  return absl::OkStatus();
}

absl::Status CheckFloor(size_t n, double floor, const char* who) {
  if (static_cast<double>(n) < floor) {
    return absl::FailedPreconditionError(
        absl::StrCat(who, " needs n >= ", std::ceil(floor), ", got ", n));
  }
  return absl::OkStatus();
}

std::vector<LabeledExample> LabelAll(absl::Span<const int> points, int y) {
  std::vector<LabeledExample> out;
  out.reserve(points.size());
  for (int x : points) out.push_back({x, y});
  return out;
}

double Mass(const Hypothesis& h, absl::Span<const int> points) {
  int64_t c = 0;
  for (int x : points) c += h(x);
  return static_cast<double>(c) / points.size();
}

}  // namespace

std::vector<Hypothesis> AugmentWithComplements(const ConceptClass& cls) {
  std::vector<Hypothesis> out = cls.concepts();
  for (const Hypothesis& h : cls.concepts()) out.push_back(h.Complement());
  return out;
}

double AgnosticDiscriminatorSampleFloor(double epsilon, double alpha,
                                        double beta) {
  return std::max(20 * std::log(60 / (alpha * beta)), 30 * std::log(3 / beta)) /
         (epsilon * alpha);
}

absl::StatusOr<AgnosticDiscriminatorResult> DiscriminateAgnostic(
    absl::Span<const int> points, const ConceptClass& cls,
    absl::Span<const double> p_t, const PrivacyParams& params, double alpha,
    double beta, Rng& rng) {
  RETURN_IF_ERROR(CheckInputs(points, cls, params, alpha, beta));
  if (p_t.size() != cls.size()) {
    return absl::InvalidArgumentError("P_t must cover every concept");
  }
  for (double p : p_t) {
    if (!(p >= 0 && p <= 1)) {
      return absl::InvalidArgumentError("P_t values must lie in [0, 1]");
    }
  }
  const size_t n = points.size();
  const double eps = params.epsilon;
  RETURN_IF_ERROR(CheckFloor(n,
                             AgnosticDiscriminatorSampleFloor(eps, alpha, beta),
                             "agnostic discriminator"));

  const std::vector<Hypothesis> aug = AugmentWithComplements(cls);
  std::vector<double> pt(aug.size());
  for (size_t i = 0; i < cls.size(); ++i) {
    pt[i] = p_t[i];
    pt[cls.size() + i] = 1 - p_t[i];
  }
  std::vector<double> mass(aug.size());
  for (size_t i = 0; i < aug.size(); ++i) mass[i] = Mass(aug[i], points);

  const int64_t k = static_cast<int64_t>(std::ceil(10 / alpha));
  std::vector<std::vector<size_t>> buckets(k);
  for (size_t h = 0; h < aug.size(); ++h) {
    for (int64_t i = 1; i <= k; ++i) {
      const double lo = static_cast<double>(i - 1) / k;
      const double hi = static_cast<double>(i) / k;
      if (pt[h] >= lo && pt[h] <= hi) buckets[i - 1].push_back(h);
    }
  }
  std::vector<double> scores(k, std::numeric_limits<double>::infinity());
  for (int64_t i = 1; i <= k; ++i) {
    if (buckets[i - 1].empty()) continue;
    double best = 0;
    for (size_t h : buckets[i - 1]) best = std::max(best, mass[h]);
    scores[i - 1] = -(best - static_cast<double>(i) / k);
  }
  ASSIGN_OR_RETURN(size_t pick,
                   ExponentialMechanism(scores, 1.0 / n, eps / 3, rng));
  const int64_t j = static_cast<int64_t>(pick) + 1;

  std::vector<Hypothesis> family;
  for (size_t h : buckets[pick]) family.push_back(aug[h]);
  const std::vector<LabeledExample> ones = LabelAll(points, 1);
  ASSIGN_OR_RETURN(AgnosticLearnResult learned,
                   AgnosticEmpiricalLearn(ones, family, eps / 3, rng));
  const size_t h0 = buckets[pick][learned.index];

  ASSIGN_OR_RETURN(double noise, LaplaceSample(3.0 / (eps * n), rng));
  AgnosticDiscriminatorResult result;
  result.bucket = static_cast<size_t>(j);
  result.noisy_gap = mass[h0] + noise - static_cast<double>(j) / k;
  result.hypothesis = h0;
  result.win = !(result.noisy_gap >= 3 * alpha / 5);
  return result;
}

double RealizableDiscriminatorSampleFloor(double epsilon, double alpha,
                                          double beta) {
  return 36 * std::log(4 / beta) / (epsilon * alpha);
}

absl::StatusOr<RealizableDiscriminatorResult> DiscriminateRealizable(
    absl::Span<const int> points, const ConceptClass& cls,
    absl::Span<const int> q_t, const PrivacyParams& params, double alpha,
    double beta, Rng& rng) {
  RETURN_IF_ERROR(CheckInputs(points, cls, params, alpha, beta));
  if (q_t.size() != cls.size()) {
    return absl::InvalidArgumentError("Q_t must cover every concept");
  }
  const size_t n = points.size();
  const double eps = params.epsilon;
  RETURN_IF_ERROR(
      CheckFloor(n, RealizableDiscriminatorSampleFloor(eps, alpha, beta),
                 "realizable discriminator"));

  RealizableDiscriminatorResult result;
  for (int side = 0; side <= 1; ++side) {
    // Side 0 hunts for a heavy h with Q_t(h) = 0 on all-1 labels; side 1
    // for a light h with Q_t(h) = 1 on all-0 labels.
    std::vector<size_t> members;
    std::vector<Hypothesis> family;
    for (size_t i = 0; i < cls.size(); ++i) {
      if ((q_t[i] != 0) == (side == 1)) {
        members.push_back(i);
        family.push_back(cls.concept_at(i));
      }
    }
    if (family.empty()) continue;
    const std::vector<LabeledExample> labeled = LabelAll(points, 1 - side);
    ASSIGN_OR_RETURN(AgnosticLearnResult learned,
                     AgnosticEmpiricalLearn(labeled, family, eps / 4, rng));
    const size_t h = members[learned.index];
    ASSIGN_OR_RETURN(double noise, LaplaceSample(4.0 / (eps * n), rng));
    const double noisy = Mass(cls.concept_at(h), points) + noise;
    if (side == 0 && noisy >= 2 * alpha / 3) {
      result.hypothesis = h;
      result.bit = 1;
      return result;
    }
    if (side == 1 && noisy <= alpha / 3) {
      result.hypothesis = h;
      result.bit = 0;
      return result;
    }
  }
  result.win = true;
  return result;
}

}  // namespace dpol
