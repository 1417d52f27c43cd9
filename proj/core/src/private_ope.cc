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

#include "dpol/private_ope.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "dpol/mechanisms.h"
#include "dpol/status_macros.h"

namespace dpol {
namespace {

std::vector<double> Weights(absl::Span<const double> cumulative, double eta) {
  const double best = *std::min_element(cumulative.begin(), cumulative.end());
  std::vector<double> w(cumulative.size());
  double total = 0;
  for (size_t i = 0; i < w.size(); ++i) {
    w[i] = std::exp(-eta * (cumulative[i] - best));
    total += w[i];
  }
  for (double& p : w) p /= total;
  return w;
}

int LevelOf(const Interval& iv) {
  return std::countr_zero(static_cast<uint64_t>(iv.length()));
}

}  // namespace

double DefaultOpeEta(size_t N, int64_t T) {
  if (N <= 1 || T <= 0) return 0;
  return std::sqrt(8 * std::log(static_cast<double>(N)) /
                   static_cast<double>(T));
}

absl::StatusOr<PrivateOpe> PrivateOpe::Create(const OpeConfig& config) {
  if (config.N == 0) return absl::InvalidArgumentError("no experts");
  if (config.eta < 0) return absl::InvalidArgumentError("negative eta");
  if (config.N > (size_t{1} << 24)) {
    return absl::ResourceExhaustedError("too many experts");
  }
  ASSIGN_OR_RETURN(DyadicIndex index, DyadicIndex::Build(config.T));
  if (!config.noiseless) RETURN_IF_ERROR(ValidatePrivacyParams(config.params));
  PrivateOpe ope(config, std::move(index));
  if (!config.noiseless) {
    const int64_t k = static_cast<int64_t>(config.N) * ope.index_.MaxCoverage();
    const double per_step = ope.ledger_.ChargeAdvancedBudget(
        "ope-tree", config.params, k, "tree aggregation");
    ope.noise_scale_ = 1.0 / per_step;
  }
  return ope;
}

PrivateOpe::PrivateOpe(const OpeConfig& config, DyadicIndex index)
    : config_(config),
      index_(std::move(index)),
      eta_(config.eta > 0 ? config.eta : DefaultOpeEta(config.N, config.T)),
      open_(index_.levels(), std::vector<double>(config.N, 0.0)),
      released_(index_.levels(), std::vector<double>(config.N, 0.0)),
      noisy_(config.N, 0.0) {}

std::vector<double> PrivateOpe::Probabilities() const {
  return Weights(noisy_, eta_);
}

size_t PrivateOpe::Select(Rng& rng) const {
  if (config_.N == 1) return 0;
  return SampleDiscrete(Probabilities(), rng);
}

absl::Status PrivateOpe::Observe(absl::Span<const double> loss, Rng& rng) {
  if (loss.size() != config_.N) {
    return absl::InvalidArgumentError(absl::StrCat(
        "loss vector has length ", loss.size(), ", expected ", config_.N));
  }
  if (t_ >= config_.T) {
    return absl::OutOfRangeError(
        absl::StrCat("horizon ", config_.T, " exhausted"));
  }
  for (double l : loss) {
    if (!(l >= 0 && l <= 1)) {
      return absl::InvalidArgumentError("losses must lie in [0, 1]");
    }
  }
  ++t_;
  for (auto& level : open_) {
    for (size_t i = 0; i < level.size(); ++i) level[i] += loss[i];
  }
  for (const Interval& iv : index_.EndingAt(t_)) {
    const int j = LevelOf(iv);
    for (size_t i = 0; i < config_.N; ++i) {
      double noise = 0;
      if (!config_.noiseless) {
        ASSIGN_OR_RETURN(noise, LaplaceSample(noise_scale_, rng));
      }
      released_[j][i] = open_[j][i] + noise;
      open_[j][i] = 0;
    }
  }
  ASSIGN_OR_RETURN(std::vector<Interval> pieces, index_.Decompose(1, t_));
  std::fill(noisy_.begin(), noisy_.end(), 0.0);
  for (const Interval& iv : pieces) {
    const std::vector<double>& block = released_[LevelOf(iv)];
    for (size_t i = 0; i < config_.N; ++i) noisy_[i] += block[i];
  }
  return absl::OkStatus();
}

absl::StatusOr<size_t> PrivateOpe::Step(absl::Span<const double> loss,
                                        Rng& rng) {
  const size_t choice = Select(rng);
  RETURN_IF_ERROR(Observe(loss, rng));
  return choice;
}

std::vector<std::vector<double>> ExactMwProbabilities(
    const std::vector<std::vector<double>>& losses, double eta) {
  std::vector<std::vector<double>> out;
  if (losses.empty()) return out;
  std::vector<double> cumulative(losses[0].size(), 0.0);
  for (const auto& row : losses) {
    out.push_back(Weights(cumulative, eta));
    for (size_t i = 0; i < row.size(); ++i) cumulative[i] += row[i];
  }
  return out;
}

}  // namespace dpol
