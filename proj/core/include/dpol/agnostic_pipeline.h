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

#ifndef DPOL_AGNOSTIC_PIPELINE_H_
#define DPOL_AGNOSTIC_PIPELINE_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpol/adversary.h"
#include "dpol/batch_learner.h"
#include "dpol/concept_class.h"
#include "dpol/experts.h"
#include "dpol/game.h"
#include "dpol/interval_sanitizer.h"
#include "dpol/learner.h"
#include "dpol/private_ope.h"
#include "dpol/rng.h"
#include "dpol/soa.h"

namespace dpol {

enum class IntervalSanitizerKind { kIdentity, kDirect };

struct AgnosticConfig {
  int64_t T = 64;
  // Budget of each half: the interval sanitizer and the OPE layer each
  // receive these parameters.
  PrivacyParams params{1.0, 1e-6};
  // Number of switches per expert; negative means the Littlestone dimension.
  int M = -1;
  IntervalSanitizerKind sanitizer = IntervalSanitizerKind::kDirect;
  bool ope_noiseless = false;
  double eta = 0;
  ExpertCaps caps;
};

// Interval sanitization of the features, the expert pool, and private OPE
// over the experts' mistake indicators on the true stream.
class ExpertsLearner : public OnlineLearner {
 public:
  static absl::StatusOr<std::unique_ptr<ExpertsLearner>> Create(
      ClassPtr cls, const AgnosticConfig& config);

  absl::StatusOr<Hypothesis> Predict(Rng& rng) override;
  absl::Status Observe(const LabeledExample& example, Rng& rng) override;
  const PrivacyLedger& ledger() const override { return ledger_; }
  std::string name() const override { return "experts"; }

  int M() const { return M_; }
  const ExpertPool& pool() const { return pool_; }
  const PrivateOpe& ope() const { return ope_; }
  const IntervalSanitizer& sanitizer() const { return sanitizer_; }
  // Mistakes of every expert on the true stream so far.
  const std::vector<int64_t>& expert_mistakes() const {
    return expert_mistakes_;
  }
  const std::vector<size_t>& choices() const { return choices_; }

 private:
  ExpertsLearner(ClassPtr cls, std::unique_ptr<Soa> soa, int M,
                 IntervalSanitizer sanitizer, ExpertPool pool, PrivateOpe ope);

  ClassPtr cls_;
  std::unique_ptr<Soa> soa_;
  int M_;
  IntervalSanitizer sanitizer_;
  ExpertPool pool_;
  PrivateOpe ope_;
  PrivacyLedger ledger_;
  int64_t t_ = 0;
  std::vector<int> current_;
  std::vector<int64_t> expert_mistakes_;
  std::vector<size_t> choices_;
};

absl::StatusOr<GameTranscript> RunAgnostic(ClassPtr cls,
                                           const AgnosticConfig& config,
                                           const AdversarySpec& spec, Rng& rng);

enum class BatchSanitizerKind { kIdentity, kHistogram };

struct AgnosticBatchConfig {
  int64_t T = 1024;
  int64_t B = 0;
  PrivacyParams params{1.0, 1e-6};
  BatchSanitizerKind sanitizer = BatchSanitizerKind::kHistogram;
  double alpha_target = 1.0;
  // Zero means the Hedge default for horizon ceil(T / B).
  double eta = 0;
};

// The batched reduction with Hedge inner learners. A sanitizer failure
// truncates the run.
absl::StatusOr<GameTranscript> RunAgnosticBatch(
    ClassPtr cls, const AgnosticBatchConfig& config, const AdversarySpec& spec,
    Rng& rng);

}  // namespace dpol

#endif  // DPOL_AGNOSTIC_PIPELINE_H_
