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

#ifndef DPOL_PRIVATE_OPE_H_
#define DPOL_PRIVATE_OPE_H_

#include <cstdint>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "dpol/dyadic.h"
#include "dpol/privacy_ledger.h"
#include "dpol/rng.h"

namespace dpol {

struct OpeConfig {
  size_t N = 1;
  int64_t T = 1;
  PrivacyParams params{1.0, 1e-6};
  // Zero means sqrt(8 ln N / T).
  double eta = 0;
  // Exact cumulative losses and no ledger charge. Not private; for tests.
  bool noiseless = false;
};

// Multiplicative weights over noisy cumulative losses. Each completed dyadic
// block of loss vectors is released once with Laplace noise per coordinate;
// the prefix sum before round t is the sum of the blocks decomposing
// [1, t-1]. Every loss enters N * levels releases, composed with the
// advanced theorem.
class PrivateOpe {
 public:
  static absl::StatusOr<PrivateOpe> Create(const OpeConfig& config);

  // i_t, sampled from the current weights.
  size_t Select(Rng& rng) const;
  // Consumes the loss vector of the current round.
  absl::Status Observe(absl::Span<const double> loss, Rng& rng);
  // Select followed by Observe.
  absl::StatusOr<size_t> Step(absl::Span<const double> loss, Rng& rng);

  std::vector<double> Probabilities() const;
  const std::vector<double>& noisy_cumulative() const { return noisy_; }
  int64_t t() const { return t_; }
  double eta() const { return eta_; }
  double noise_scale() const { return noise_scale_; }
  const PrivacyLedger& ledger() const { return ledger_; }

 private:
  PrivateOpe(const OpeConfig& config, DyadicIndex index);

  OpeConfig config_;
  DyadicIndex index_;
  double eta_;
  double noise_scale_ = 0;
  int64_t t_ = 0;
  // Running exact sum of the open block at each level.
  std::vector<std::vector<double>> open_;
  // Latest completed noisy block at each level.
  std::vector<std::vector<double>> released_;
  std::vector<double> noisy_;
  PrivacyLedger ledger_;
};

double DefaultOpeEta(size_t N, int64_t T);

// Exact multiplicative weights: row t holds the selection distribution of
// round t+1 given losses of rounds 1..t.
std::vector<std::vector<double>> ExactMwProbabilities(
    const std::vector<std::vector<double>>& losses, double eta);

}  // namespace dpol

#endif  // DPOL_PRIVATE_OPE_H_
