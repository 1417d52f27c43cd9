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

#include "dpol/game.h"

#include <algorithm>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpol/status_macros.h"

namespace dpol {

int64_t GameTranscript::mistakes() const {
  int64_t m = 0;
  for (const GameRound& r : rounds) m += r.mistake;
  return m;
}

bool operator==(const GameTranscript& a, const GameTranscript& b) {
  return a.hypotheses == b.hypotheses && a.rounds == b.rounds &&
         a.ledger == b.ledger && a.meta == b.meta && a.seed == b.seed &&
         a.halted_at == b.halted_at && a.degraded == b.degraded &&
         a.truncated == b.truncated;
}

absl::StatusOr<GameTranscript> RunGame(OnlineLearner& learner,
                                       Adversary& adversary,
                                       const ConceptClass& cls,
                                       const GameOptions& options, Rng& rng) {
  if (options.T < 0) return absl::InvalidArgumentError("T must be >= 0");
  Rng learner_rng = rng.Fork(1);
  Rng adversary_rng = rng.Fork(2);
  GameTranscript transcript;
  transcript.seed = rng.seed();
  absl::flat_hash_map<Hypothesis, int> ids;
  std::vector<Hypothesis> history;
  history.reserve(options.T);
  BitVector version = cls.FullMask();

  for (int64_t t = 1; t <= options.T; ++t) {
    if (learner.halted() && transcript.halted_at < 0) {
      transcript.halted_at = t;
      if (options.halt_policy == HaltPolicy::kTruncate) {
        transcript.truncated = true;
        break;
      }
      transcript.degraded = true;
    }
    ASSIGN_OR_RETURN(Hypothesis h, learner.Predict(learner_rng));
    if (h.size() != cls.num_points()) {
      return absl::InternalError("learner output has the wrong domain size");
    }
    ASSIGN_OR_RETURN(LabeledExample e, adversary.Next(history, adversary_rng));
    if (options.require_realizable) {
      version &= cls.ConsistentMask(e);
      if (version.None()) {
        return absl::FailedPreconditionError(absl::StrCat(
            "adversary emitted a non-realizable stream at round ", t));
      }
    }
    auto [it, inserted] =
        ids.emplace(h, static_cast<int>(transcript.hypotheses.size()));
    if (inserted) transcript.hypotheses.push_back(h);
    transcript.rounds.push_back({it->second, e, h(e.point) != e.label ? 1 : 0});
    history.push_back(std::move(h));
    RETURN_IF_ERROR(learner.Observe(e, learner_rng));
  }
  transcript.ledger = learner.ledger();
  transcript.meta["learner"] = learner.name();
  transcript.meta["T"] = absl::StrCat(options.T);
  return transcript;
}

RegretReport ComputeRegret(const GameTranscript& transcript,
                           const ConceptClass& cls) {
  RegretReport report;
  report.cumulative.reserve(transcript.rounds.size());
  std::vector<int64_t> per_concept(cls.size(), 0);
  for (const GameRound& r : transcript.rounds) {
    report.mistakes += r.mistake;
    report.cumulative.push_back(report.mistakes);
    for (size_t i = 0; i < cls.size(); ++i) {
      per_concept[i] += cls.concept_at(i)(r.example.point) != r.example.label;
    }
  }
  auto best = std::min_element(per_concept.begin(), per_concept.end());
  report.best_concept = static_cast<size_t>(best - per_concept.begin());
  report.best_in_hindsight = *best;
  report.regret = report.mistakes - report.best_in_hindsight;
  return report;
}

bool MistakesConsistent(const GameTranscript& transcript) {
  for (const GameRound& r : transcript.rounds) {
    if (r.hypothesis < 0 ||
        static_cast<size_t>(r.hypothesis) >= transcript.hypotheses.size()) {
      return false;
    }
    const Hypothesis& h = transcript.hypotheses[r.hypothesis];
    if ((h(r.example.point) != r.example.label ? 1 : 0) != r.mistake) {
      return false;
    }
  }
  return true;
}

absl::StatusOr<GameTranscript> RunRealizable(ClassPtr cls,
                                             const RealizableConfig& config,
                                             const AdversarySpec& spec,
                                             Rng& rng) {
  Rng setup = rng.Fork(0);
  ASSIGN_OR_RETURN(auto learner, RealizableLearner::Create(cls, config, setup));
  ASSIGN_OR_RETURN(auto adversary, MakeAdversary(spec, cls));
  GameOptions options;
  options.T = config.T;
  options.require_realizable = true;
  ASSIGN_OR_RETURN(GameTranscript transcript,
                   RunGame(*learner, *adversary, *cls, options, rng));
  transcript.meta["mode"] = "realizable";
  transcript.meta["adversary"] = AdversaryKindName(spec.kind);
  transcript.meta["epsilon"] = absl::StrCat(config.params.epsilon);
  transcript.meta["delta"] = absl::StrCat(config.params.delta);
  transcript.meta["N0"] = absl::StrCat(learner->constants().N0);
  transcript.meta["constant_scale"] = absl::StrCat(config.constant_scale);
  transcript.meta["svt_instances"] = absl::StrCat(learner->svt_instances());
  return transcript;
}

}  // namespace dpol
