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

#ifndef DPOL_EXPERTS_H_
#define DPOL_EXPERTS_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "dpol/concept_class.h"
#include "dpol/interval_sanitizer.h"
#include "dpol/rng.h"
#include "dpol/soa.h"

namespace dpol {

// Switch rounds i_1..i_M and feed rounds j_1..j_M, both 1-based, with
// 1 <= j_1 <= i_1 < j_2 <= i_2 < ... < j_M <= i_M <= T.
struct ExpertId {
  std::vector<int64_t> switches;
  std::vector<int64_t> feeds;

  int M() const { return static_cast<int>(switches.size()); }
  std::string ToString() const;
  friend bool operator==(const ExpertId& a, const ExpertId& b) {
    return a.switches == b.switches && a.feeds == b.feeds;
  }
};

absl::Status ValidateExpertId(const ExpertId& id, int64_t T);

struct ExpertCaps {
  int max_M = 2;
  int64_t max_T = 256;
  uint64_t max_experts = uint64_t{1} << 20;
  // Bound on experts times rounds.
  uint64_t max_work = uint64_t{1} << 28;
};

// |J| = C(T + M, 2M), saturating at UINT64_MAX.
uint64_t CountExperts(int64_t T, int M);

// Every member of J in lexicographic order of (i_1, j_1, i_2, j_2, ...).
absl::StatusOr<std::vector<ExpertId>> EnumerateExperts(
    int64_t T, int M, const ExpertCaps& caps = {});

// One expert: an SOA inner learner fed at the switch rounds. A missing
// synthetic point, or a forced label that leaves no consistent concept, keeps
// the current output.
class Expert {
 public:
  Expert(const Soa* soa, ExpertId id);

  // Returns h_t. `feed` is S'_{i_{k-1}+1, i_k} and must be present exactly
  // when t = i_k. Rounds must be consecutive from 1.
  absl::StatusOr<Hypothesis> Step(int64_t t,
                                  const std::optional<SyntheticSequence>& feed);

  const ExpertId& id() const { return id_; }
  const std::vector<LabeledExample>& fed() const { return state_.history; }
  int switches_done() const { return next_; }

 private:
  const Soa* soa_;
  ExpertId id_;
  SoaState state_;
  Hypothesis current_;
  int64_t round_ = 0;
  int next_ = 0;
};

// S'_{l,r} for 1 <= l <= r.
using ReleaseQuery =
    std::function<absl::StatusOr<SyntheticSequence>(int64_t, int64_t)>;

// All experts of J run together. Experts sharing a prefix of
// (i_1, j_1, ..., i_k, j_k) share the inner learner state.
class ExpertPool {
 public:
  static absl::StatusOr<ExpertPool> Create(const Soa* soa, int64_t T, int M,
                                           const ExpertCaps& caps = {});

  size_t size() const { return ids_.size(); }
  int64_t T() const { return T_; }
  const ExpertId& id(size_t e) const { return ids_[e]; }
  const std::vector<ExpertId>& ids() const { return ids_; }

  // Outputs of every expert for round t, as indices into hypotheses().
  // Rounds must be consecutive from 1; `query` must answer every interval
  // ending before t.
  absl::StatusOr<std::vector<int>> Round(int64_t t, const ReleaseQuery& query);

  const std::vector<Hypothesis>& hypotheses() const { return pool_; }
  size_t num_states() const { return nodes_.size(); }

 private:
  struct Node {
    SoaState state;
    int hypothesis = 0;
  };

  ExpertPool(const Soa* soa, int64_t T, std::vector<ExpertId> ids);
  int Intern(const Hypothesis& h);
  absl::StatusOr<int> Child(int parent, int64_t l, int64_t i, int64_t j,
                            const ReleaseQuery& query);

  const Soa* soa_;
  int64_t T_;
  std::vector<ExpertId> ids_;
  // schedule_[r] lists (expert, k) with i_k = r.
  std::vector<std::vector<std::pair<uint32_t, int>>> schedule_;
  std::vector<int> node_of_;
  std::vector<Node> nodes_;
  absl::flat_hash_map<std::tuple<int, int64_t, int64_t>, int> children_;
  std::vector<Hypothesis> pool_;
  absl::flat_hash_map<Hypothesis, int> pool_index_;
  int64_t round_ = 0;
};

// Output streams of every expert over a realized feature stream.
struct ExpertStreams {
  std::vector<ExpertId> ids;
  std::vector<Hypothesis> hypotheses;
  // streams[e][t-1] indexes hypotheses.
  std::vector<std::vector<int>> streams;
};

// Feeds x_1..x_T through the interval sanitizer and records
// every expert's outputs.
absl::StatusOr<ExpertStreams> ConstructExperts(const Soa& soa,
                                               absl::Span<const int> xs, int M,
                                               IntervalSanitizer& sanitizer,
                                               Rng& rng,
                                               const ExpertCaps& caps = {});

// disagreements[e][c] = #{t : stream e at t and concept c differ on x_t}.
struct ExpertAudit {
  std::vector<std::vector<int64_t>> disagreements;
  // Per concept, the smallest disagreement and an expert attaining it.
  std::vector<int64_t> best;
  std::vector<size_t> best_expert;
};

ExpertAudit AuditExperts(const ExpertStreams& streams, const ConceptClass& cls,
                         absl::Span<const int> xs);

// One row per (expert, concept): expert,switches,feeds,concept,disagreements.
std::string ExpertAuditCsv(const ExpertStreams& streams,
                           const ConceptClass& cls, const ExpertAudit& audit);

}  // namespace dpol

#endif  // DPOL_EXPERTS_H_
