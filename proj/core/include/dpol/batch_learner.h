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

#ifndef DPOL_BATCH_LEARNER_H_
#define DPOL_BATCH_LEARNER_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "dpol/concept_class.h"
#include "dpol/learner.h"
#include "dpol/privacy_ledger.h"
#include "dpol/rng.h"

namespace dpol {

// Turns a batch of labeled examples into a synthetic batch of the same size.
using BatchSanitizer =
    std::function<absl::StatusOr<std::vector<LabeledExample>>(
        absl::Span<const LabeledExample>, Rng&)>;

using LearnerFactory = std::function<std::unique_ptr<OnlineLearner>()>;

// Returns the batch unchanged. Not private; for tests.
BatchSanitizer IdentityBatchSanitizer();

// Histogram sanitizer for the labeled class followed by synthetic data.
BatchSanitizer HistogramBatchSanitizer(const ConceptClass& cls,
                                       PrivacyParams params,
                                       double alpha_target = 1.0);

struct BatchConfig {
  int64_t T = 0;
  // Zero means ceil(sqrt(T)).
  int64_t B = 0;
  // Charged once to the ledger when set; the identity sanitizer leaves it
  // empty.
  std::optional<PrivacyParams> sanitizer_params;
};

int64_t DefaultBatchSize(int64_t T);

// Batched reduction to non-private learners. Rounds are grouped into batches of
// B; after each complete batch its synthetic copy is shuffled and dealt one
// example per inner learner. A final partial batch is never sanitized.
class BatchLearner : public OnlineLearner {
 public:
  static absl::StatusOr<std::unique_ptr<BatchLearner>> Create(
      const BatchConfig& config, BatchSanitizer sanitizer,
      LearnerFactory factory);

  absl::StatusOr<Hypothesis> Predict(Rng& rng) override;
  absl::Status Observe(const LabeledExample& example, Rng& rng) override;
  bool halted() const override { return halted_; }
  const PrivacyLedger& ledger() const override { return ledger_; }
  std::string name() const override { return "batch"; }

  int64_t B() const { return B_; }
  int64_t batch_index() const { return batch_index_; }
  size_t last_choice() const { return last_choice_; }
  const std::vector<LabeledExample>& subsequence(size_t i) const {
    return subsequences_[i];
  }
  const absl::Status& failure() const { return failure_; }

 private:
  BatchLearner(int64_t B, BatchSanitizer sanitizer,
               std::vector<std::unique_ptr<OnlineLearner>> learners);

  int64_t B_;
  BatchSanitizer sanitizer_;
  std::vector<std::unique_ptr<OnlineLearner>> learners_;
  std::vector<std::vector<LabeledExample>> subsequences_;
  std::vector<LabeledExample> pending_;
  int64_t batch_index_ = 0;
  size_t last_choice_ = 0;
  std::optional<Hypothesis> last_output_;
  bool halted_ = false;
  absl::Status failure_;
  PrivacyLedger ledger_;
};

}  // namespace dpol

#endif  // DPOL_BATCH_LEARNER_H_
