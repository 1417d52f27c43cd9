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

#ifndef DPOL_GAME_H_
#define DPOL_GAME_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"
#include "dpol/adversary.h"
#include "dpol/concept_class.h"
#include "dpol/learner.h"
#include "dpol/privacy_ledger.h"
#include "dpol/realizable_learner.h"
#include "dpol/rng.h"

namespace dpol {

struct GameRound {
  int hypothesis = 0;  // index into GameTranscript::hypotheses
  LabeledExample example;
  int mistake = 0;

  friend bool operator==(const GameRound& a, const GameRound& b) {
    return a.hypothesis == b.hypothesis && a.example == b.example &&
           a.mistake == b.mistake;
  }
};

struct GameTranscript {
  std::vector<Hypothesis> hypotheses;
  std::vector<GameRound> rounds;
  PrivacyLedger ledger;
  std::map<std::string, std::string> meta;
  uint64_t seed = 0;
  // Round (1-based) at which the learner halted, or -1.
  int64_t halted_at = -1;
  // Play continued on a fallback hypothesis after a halt.
  bool degraded = false;
  // The run stopped before the horizon.
  bool truncated = false;

  const Hypothesis& hypothesis_at(size_t round) const {
    return hypotheses[rounds[round].hypothesis];
  }
  int64_t mistakes() const;

  friend bool operator==(const GameTranscript& a, const GameTranscript& b);
};

struct RegretReport {
  int64_t mistakes = 0;
  int64_t best_in_hindsight = 0;
  size_t best_concept = 0;
  int64_t regret = 0;
  std::vector<int64_t> cumulative;  // mistakes after each round
};

enum class HaltPolicy { kTruncate, kContinueDegraded };

struct GameOptions {
  int64_t T = 0;
  HaltPolicy halt_policy = HaltPolicy::kContinueDegraded;
  // Abort if the adversary's stream leaves no consistent concept.
  bool require_realizable = false;
};

// Simultaneous-move loop: the learner commits to h_t, the adversary picks
// (x_t, y_t) from h_1..h_{t-1}, then the learner observes the example.
// Learner and adversary draw from independent forks of `rng`.
absl::StatusOr<GameTranscript> RunGame(OnlineLearner& learner,
                                       Adversary& adversary,
                                       const ConceptClass& cls,
                                       const GameOptions& options, Rng& rng);

// Exhaustive best-in-hindsight over the class.
RegretReport ComputeRegret(const GameTranscript& transcript,
                           const ConceptClass& cls);

// Recomputes every mistake bit from the stored hypotheses and examples.
bool MistakesConsistent(const GameTranscript& transcript);

// The realizable learner against `spec`; the stream must stay realizable.
absl::StatusOr<GameTranscript> RunRealizable(ClassPtr cls,
                                             const RealizableConfig& config,
                                             const AdversarySpec& spec,
                                             Rng& rng);

}  // namespace dpol

#endif  // DPOL_GAME_H_
