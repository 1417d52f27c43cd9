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

#ifndef DPOL_REALIZABLE_LEARNER_H_
#define DPOL_REALIZABLE_LEARNER_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "dpol/above_threshold.h"
#include "dpol/concept_class.h"
#include "dpol/learner.h"
#include "dpol/privacy_ledger.h"
#include "dpol/rng.h"
#include "dpol/soa.h"

namespace dpol {

struct RealizableConfig {
  int64_t T = 1024;
  PrivacyParams params{1.0, 1e-6};
  double beta = 0.05;
  // Requested number of layer-0 sequences; rounded up to a power of two of
  // at least 2^(d+1). Zero means constant_scale times the faithful value.
  uint64_t N0 = 64;
  // Multiplies M_s and the AboveThreshold margins.
  double constant_scale = 1.0;
  // Use the theory constants for N0, M_s and the margins.
  bool faithful_constants = false;
};

// Constants derived from a config and the Littlestone dimension d.
struct RealizableConstants {
  int d = 0;
  uint64_t N0 = 0;
  double epsilon0 = 0;
  double scale = 1;
  double svt_margin = 0;  // scaled 8 (ln T + ln(6T / beta)) / epsilon0

  uint64_t N(int s) const { return N0 >> s; }
  // 128 * 2^(-6 * 2^s) * N_s, scaled.
  double M(int s) const;
  double filter(int s) const { return 0.75 * M(s); }
  double svt_threshold(int s) const {
    return static_cast<double>(N(s)) + svt_margin;
  }
};

absl::StatusOr<RealizableConstants> ResolveRealizableConstants(
    const RealizableConfig& config, int ldim);

// Theory value of N0 for dimension d (may be astronomically large).
double FaithfulN0(int d, const PrivacyParams& params, double beta);

// A forest slot: either the bottom value or a sequence of examples.
struct NodeSequence {
  bool bottom = true;
  std::vector<LabeledExample> examples;

  static NodeSequence Bottom() { return {}; }
  static NodeSequence Of(std::vector<LabeledExample> e) {
    return {false, std::move(e)};
  }
  friend bool operator==(const NodeSequence& a, const NodeSequence& b) {
    return a.bottom == b.bottom && (a.bottom || a.examples == b.examples);
  }
};

// One tournament round with explicit randomness: `labels[i]` is the tournament
// label drawn for pair i (read only when the pair collides) and
// `permutation[i]` is the child slot of pair i.
absl::StatusOr<std::vector<NodeSequence>> UpdateLayerWithDraws(
    const std::vector<NodeSequence>& sequences, const Soa& soa,
    absl::Span<const int> labels, absl::Span<const size_t> permutation);

// One tournament round with fresh uniform labels and a uniform permutation.
absl::StatusOr<std::vector<NodeSequence>> UpdateLayer(
    const std::vector<NodeSequence>& sequences, const Soa& soa, Rng& rng);

// Counts of every read the learner makes of a true example.
struct InformationFlowProbe {
  int64_t insertion_reads = 0;
  int64_t svt_reads = 0;
  int64_t other_reads = 0;
};

struct RealizableEvent {
  enum Kind { kSvtAbove, kHeadRemoved, kLayerUpdate, kListReleased, kHalt };
  Kind kind;
  int64_t round = 0;
  int layer = 0;
  size_t list_size = 0;
};

// The realizable private online learner with lazy updates.
class RealizableLearner : public OnlineLearner {
 public:
  static absl::StatusOr<std::unique_ptr<RealizableLearner>> Create(
      ClassPtr cls, const RealizableConfig& config, Rng& rng);

  absl::StatusOr<Hypothesis> Predict(Rng& rng) override;
  absl::Status Observe(const LabeledExample& example, Rng& rng) override;
  bool halted() const override { return halted_; }
  const PrivacyLedger& ledger() const override { return ledger_; }
  std::string name() const override { return "realizable"; }

  const RealizableConstants& constants() const { return constants_; }
  int layer() const { return layer_; }
  const std::vector<Hypothesis>& frequent() const { return frequent_; }
  const InformationFlowProbe& probe() const { return probe_; }
  const std::vector<RealizableEvent>& events() const { return events_; }
  int64_t svt_instances() const { return svt_instances_; }
  // Longest sequence held when each layer was created.
  const std::vector<size_t>& max_length_at_layer_start() const {
    return max_length_at_layer_start_;
  }
  // Materialized layer for inspection (dense; only for small N_s).
  absl::StatusOr<std::vector<NodeSequence>> CurrentLayer() const;

 private:
  struct Node {
    std::vector<LabeledExample> examples;
    BitVector version;
    int soa = -1;  // interned SOA output, -1 if the version class is empty
  };

  RealizableLearner(ClassPtr cls, RealizableConstants constants,
                    const RealizableConfig& config);

  int Intern(const Hypothesis& h);
  absl::StatusOr<Node> MakeNode(std::vector<LabeledExample> examples);
  const Node* NodeAt(uint64_t index) const;
  absl::Status InsertExample(uint64_t pair, const LabeledExample& example);
  absl::Status AdvanceLayer(Rng& rng);
  absl::Status ReleaseFrequentList(Rng& rng);
  absl::Status RestartSvt(Rng& rng);

  ClassPtr cls_;
  std::unique_ptr<Soa> soa_;
  RealizableConfig config_;
  RealizableConstants constants_;
  PrivacyLedger ledger_;

  std::vector<Hypothesis> pool_;
  absl::flat_hash_map<Hypothesis, int> pool_index_;

  int layer_ = 0;
  // Touched slots of the current layer; untouched slots are the empty
  // sequence on layer 0 and bottom afterwards.
  std::map<uint64_t, Node> nodes_;
  Node empty_node_;

  std::vector<Hypothesis> frequent_;
  std::optional<AboveThreshold> svt_;
  int64_t svt_instances_ = 0;
  Hypothesis last_output_;
  bool halted_ = false;
  int64_t round_ = 0;

  InformationFlowProbe probe_;
  std::vector<RealizableEvent> events_;
  std::vector<size_t> max_length_at_layer_start_;
};

}  // namespace dpol

#endif  // DPOL_REALIZABLE_LEARNER_H_
