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

#include "dpol/agnostic_pipeline.h"

#include <utility>

#include "absl/strings/str_cat.h"
#include "dpol/dyadic.h"
#include "dpol/hedge.h"
#include "dpol/status_macros.h"

namespace dpol {

absl::StatusOr<std::unique_ptr<ExpertsLearner>> ExpertsLearner::Create(
    ClassPtr cls, const AgnosticConfig& config) {
  RETURN_IF_ERROR(ValidatePrivacyParams(config.params));
  auto soa = std::make_unique<Soa>(cls);
  const int M = config.M >= 0 ? config.M : soa->oracle().Ldim(cls->FullMask());
  ASSIGN_OR_RETURN(ExpertPool pool,
                   ExpertPool::Create(soa.get(), config.T, M, config.caps));

  ASSIGN_OR_RETURN(DyadicIndex index, DyadicIndex::Build(config.T));
  SequenceSanitizer inner = IdentitySequenceSanitizer();
  if (config.sanitizer == IntervalSanitizerKind::kDirect) {
    const double c = static_cast<double>(index.MaxCoverage());
    inner = DirectSequenceSanitizer(
        cls->num_points(),
        {config.params.epsilon / c, config.params.delta / c});
  }
  ASSIGN_OR_RETURN(
      IntervalSanitizer sanitizer,
      IntervalSanitizer::Create(config.T, config.params, std::move(inner)));

  OpeConfig ope_config;
  ope_config.N = pool.size();
  ope_config.T = config.T;
  ope_config.params = config.params;
  ope_config.eta = config.eta;
  ope_config.noiseless = config.ope_noiseless;
  ASSIGN_OR_RETURN(PrivateOpe ope, PrivateOpe::Create(ope_config));

  return std::unique_ptr<ExpertsLearner>(new ExpertsLearner(
      std::move(cls), std::move(soa), M, std::move(sanitizer), std::move(pool),
      std::move(ope)));
}

ExpertsLearner::ExpertsLearner(ClassPtr cls, std::unique_ptr<Soa> soa, int M,
                               IntervalSanitizer sanitizer, ExpertPool pool,
                               PrivateOpe ope)
    : cls_(std::move(cls)),
      soa_(std::move(soa)),
      M_(M),
      sanitizer_(std::move(sanitizer)),
      pool_(std::move(pool)),
      ope_(std::move(ope)),
      expert_mistakes_(pool_.size(), 0) {
  ledger_.Append(sanitizer_.ledger());
  ledger_.Append(ope_.ledger());
}

absl::StatusOr<Hypothesis> ExpertsLearner::Predict(Rng& rng) {
  if (choices_.size() == static_cast<size_t>(t_)) {
    const ReleaseQuery query = [this](int64_t l, int64_t r) {
      return sanitizer_.Query(l, r);
    };
    ASSIGN_OR_RETURN(current_, pool_.Round(t_ + 1, query));
    choices_.push_back(ope_.Select(rng));
  }
  return pool_.hypotheses()[current_[choices_.back()]];
}

absl::Status ExpertsLearner::Observe(const LabeledExample& example, Rng& rng) {
  if (choices_.size() != static_cast<size_t>(t_ + 1)) {
    return absl::FailedPreconditionError("observe without a prediction");
  }
  ++t_;
  RETURN_IF_ERROR(sanitizer_.Step(example.point, rng));
  std::vector<double> loss(current_.size());
  for (size_t e = 0; e < current_.size(); ++e) {
    const int wrong =
        pool_.hypotheses()[current_[e]](example.point) != example.label;
    loss[e] = wrong;
    expert_mistakes_[e] += wrong;
  }
  return ope_.Observe(loss, rng);
}

absl::StatusOr<GameTranscript> RunAgnostic(ClassPtr cls,
                                           const AgnosticConfig& config,
                                           const AdversarySpec& spec,
                                           Rng& rng) {
  GameTranscript transcript;
  if (config.T == 0) {
    transcript.seed = rng.seed();
  } else {
    ASSIGN_OR_RETURN(auto learner, ExpertsLearner::Create(cls, config));
    ASSIGN_OR_RETURN(auto adversary, MakeAdversary(spec, cls));
    GameOptions options;
    options.T = config.T;
    options.halt_policy = HaltPolicy::kTruncate;
    ASSIGN_OR_RETURN(transcript,
                     RunGame(*learner, *adversary, *cls, options, rng));
    transcript.meta["M"] = absl::StrCat(learner->M());
    transcript.meta["experts"] = absl::StrCat(learner->pool().size());
  }
  transcript.meta["mode"] = "agnostic-experts";
  transcript.meta["adversary"] = AdversaryKindName(spec.kind);
  transcript.meta["epsilon"] = absl::StrCat(config.params.epsilon);
  transcript.meta["delta"] = absl::StrCat(config.params.delta);
  transcript.meta["sanitizer"] =
      config.sanitizer == IntervalSanitizerKind::kDirect ? "direct"
                                                         : "identity";
  transcript.meta["ope"] = config.ope_noiseless ? "noiseless" : "private";
  return transcript;
}

absl::StatusOr<GameTranscript> RunAgnosticBatch(
    ClassPtr cls, const AgnosticBatchConfig& config, const AdversarySpec& spec,
    Rng& rng) {
  BatchConfig batch;
  batch.T = config.T;
  batch.B = config.B;
  BatchSanitizer sanitizer = IdentityBatchSanitizer();
  if (config.sanitizer == BatchSanitizerKind::kHistogram) {
    RETURN_IF_ERROR(ValidatePrivacyParams(config.params));
    batch.sanitizer_params = config.params;
    sanitizer =
        HistogramBatchSanitizer(*cls, config.params, config.alpha_target);
  }
  const int64_t B = config.B == 0 ? DefaultBatchSize(config.T) : config.B;
  const int64_t inner_horizon = B > 0 ? (config.T + B - 1) / B : 0;
  const double eta =
      config.eta > 0 ? config.eta : DefaultHedgeEta(inner_horizon, cls->size());
  LearnerFactory factory = [cls, eta]() -> std::unique_ptr<OnlineLearner> {
    return std::make_unique<HedgeLearner>(cls, eta);
  };
  ASSIGN_OR_RETURN(
      auto learner,
      BatchLearner::Create(batch, std::move(sanitizer), std::move(factory)));
  ASSIGN_OR_RETURN(auto adversary, MakeAdversary(spec, cls));
  GameOptions options;
  options.T = config.T;
  options.halt_policy = HaltPolicy::kTruncate;
  ASSIGN_OR_RETURN(GameTranscript transcript,
                   RunGame(*learner, *adversary, *cls, options, rng));
  transcript.meta["mode"] = "agnostic-batch";
  transcript.meta["adversary"] = AdversaryKindName(spec.kind);
  transcript.meta["epsilon"] = absl::StrCat(config.params.epsilon);
  transcript.meta["delta"] = absl::StrCat(config.params.delta);
  transcript.meta["B"] = absl::StrCat(learner->B());
  transcript.meta["sanitizer"] =
      config.sanitizer == BatchSanitizerKind::kHistogram ? "histogram"
                                                         : "identity";
  if (!learner->failure().ok()) {
    transcript.meta["failure"] = std::string(learner->failure().message());
  }
  return transcript;
}

}  // namespace dpol
