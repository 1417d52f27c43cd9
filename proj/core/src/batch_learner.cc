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

#include "dpol/batch_learner.h"

#include <cmath>
#include <utility>

#include "absl/strings/str_cat.h"
#include "dpol/compose.h"
#include "dpol/sanitizer.h"
#include "dpol/status_macros.h"

namespace dpol {

BatchSanitizer IdentityBatchSanitizer() {
  return [](absl::Span<const LabeledExample> batch,
            Rng&) -> absl::StatusOr<std::vector<LabeledExample>> {
    return std::vector<LabeledExample>(batch.begin(), batch.end());
  };
}

BatchSanitizer HistogramBatchSanitizer(const ConceptClass& cls,
                                       PrivacyParams params,
                                       double alpha_target) {
  auto cls_copy = std::make_shared<ConceptClass>(cls);
  auto labeled = std::make_shared<ConceptClass>(LabelClass(cls));
  return [cls_copy, labeled, params, alpha_target](
             absl::Span<const LabeledExample> batch,
             Rng& rng) -> absl::StatusOr<std::vector<LabeledExample>> {
    ASSIGN_OR_RETURN(
        FiniteSanitizerResult result,
        SanitizeLabeled(batch, *cls_copy, params, alpha_target, rng));
    ASSIGN_OR_RETURN(SyntheticDataset synthetic, Synthesize(result, *labeled));
    return DecodeLabeled(synthetic.points);
  };
}

int64_t DefaultBatchSize(int64_t T) {
  if (T <= 1) return 1;
  return static_cast<int64_t>(std::ceil(std::sqrt(static_cast<double>(T))));
}

absl::StatusOr<std::unique_ptr<BatchLearner>> BatchLearner::Create(
    const BatchConfig& config, BatchSanitizer sanitizer,
    LearnerFactory factory) {
  if (config.T < 0) return absl::InvalidArgumentError("negative horizon");
  const int64_t B = config.B == 0 ? DefaultBatchSize(config.T) : config.B;
  if (B < 1) return absl::InvalidArgumentError("batch size must be positive");
  if (B > (int64_t{1} << 24)) {
    return absl::InvalidArgumentError("batch size too large");
  }
  if (!sanitizer || !factory) {
    return absl::InvalidArgumentError("missing sanitizer or learner factory");
  }
  if (config.sanitizer_params) {
    RETURN_IF_ERROR(ValidatePrivacyParams(*config.sanitizer_params));
  }
  std::vector<std::unique_ptr<OnlineLearner>> learners;
  learners.reserve(B);
  for (int64_t i = 0; i < B; ++i) {
    learners.push_back(factory());
    if (learners.back() == nullptr) {
      return absl::InvalidArgumentError("learner factory returned null");
    }
  }
  std::unique_ptr<BatchLearner> out(
      new BatchLearner(B, std::move(sanitizer), std::move(learners)));
  if (config.sanitizer_params) {
    out->ledger_.Charge("batch-sanitizer", *config.sanitizer_params,
                        "disjoint batches");
  }
  return out;
}

BatchLearner::BatchLearner(int64_t B, BatchSanitizer sanitizer,
                           std::vector<std::unique_ptr<OnlineLearner>> learners)
    : B_(B),
      sanitizer_(std::move(sanitizer)),
      learners_(std::move(learners)),
      subsequences_(B) {}

absl::StatusOr<Hypothesis> BatchLearner::Predict(Rng& rng) {
  if (halted_ && last_output_) return *last_output_;
  last_choice_ = rng.UniformInt(static_cast<uint64_t>(B_));
  ASSIGN_OR_RETURN(Hypothesis h, learners_[last_choice_]->Predict(rng));
  last_output_ = h;
  return h;
}

absl::Status BatchLearner::Observe(const LabeledExample& example, Rng& rng) {
  if (halted_) return absl::OkStatus();
  pending_.push_back(example);
  if (static_cast<int64_t>(pending_.size()) < B_) return absl::OkStatus();

  absl::StatusOr<std::vector<LabeledExample>> synthetic =
      sanitizer_(pending_, rng);
  if (synthetic.ok() && static_cast<int64_t>(synthetic->size()) != B_) {
    synthetic = absl::InternalError(
        absl::StrCat("sanitizer returned ", synthetic->size(),
                     " examples for a batch of ", B_));
  }
  if (!synthetic.ok()) {
    halted_ = true;
    failure_ = synthetic.status();
    return absl::OkStatus();
  }
  pending_.clear();
  for (size_t i = synthetic->size(); i > 1; --i) {
    std::swap((*synthetic)[i - 1], (*synthetic)[rng.UniformInt(i)]);
  }
  for (int64_t i = 0; i < B_; ++i) {
    subsequences_[i].push_back((*synthetic)[i]);
    RETURN_IF_ERROR(learners_[i]->Observe((*synthetic)[i], rng));
  }
  ++batch_index_;
  return absl::OkStatus();
}

}  // namespace dpol
