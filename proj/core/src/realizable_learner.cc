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

#include "dpol/realizable_learner.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "absl/container/flat_hash_set.h"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpol/histogram.h"
#include "dpol/status_macros.h"

namespace dpol {
namespace {

constexpr uint64_t kDensePermutationLimit = uint64_t{1} << 22;

uint64_t NextPowerOfTwo(uint64_t n) {
  uint64_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// A sibling as seen by the tournament: its examples and SOA output, if any.
struct SiblingView {
  bool bottom = true;
  const std::vector<LabeledExample>* examples = nullptr;
  const Hypothesis* soa = nullptr;  // null when the SOA fails
};

bool Collides(const SiblingView& a, const SiblingView& b) {
  return !a.bottom && !b.bottom && a.soa != nullptr && b.soa != nullptr &&
         *a.soa != *b.soa;
}

// Child of a colliding pair for tournament label y.
std::vector<LabeledExample> TournamentChild(const SiblingView& a,
                                            const SiblingView& b, int y) {
  const int x = static_cast<int>(a.soa->bits().FirstDifference(b.soa->bits()));
  const SiblingView& wrong = (*a.soa)(x) != y ? a : b;
  std::vector<LabeledExample> child = *wrong.examples;
  child.push_back({x, y});
  return child;
}

std::vector<size_t> UniformPermutation(size_t n, Rng& rng) {
  std::vector<size_t> perm(n);
  for (size_t i = 0; i < n; ++i) perm[i] = i;
  for (size_t i = n; i > 1; --i) {
    std::swap(perm[i - 1], perm[rng.UniformInt(i)]);
  }
  return perm;
}

}  // namespace

double RealizableConstants::M(int s) const {
  return scale * 128.0 * std::exp2(-6.0 * std::exp2(s)) *
         static_cast<double>(N(s));
}

double FaithfulN0(int d, const PrivacyParams& params, double beta) {
  const double eps0 = params.epsilon / 2;
  const double dd = d;
  const double big = std::exp2(24.0 * std::exp2(dd) + dd);
  double n0 = 2 * big * (dd * std::log(7.0) + std::log(6 / beta));
  n0 = std::max(n0, std::exp2(6.0 * std::exp2(dd) + dd));
  if (d > 0) {
    n0 = std::max(n0, dd * std::exp2(6.0 * std::exp2(dd) + dd) *
                          std::log(8 * dd / params.delta) / eps0);
    n0 += 4 * big * dd * std::log(big * 2 * dd);
  }
  return n0;
}

absl::StatusOr<RealizableConstants> ResolveRealizableConstants(
    const RealizableConfig& config, int ldim) {
  RETURN_IF_ERROR(ValidatePrivacyParams(config.params));
  if (config.params.delta <= 0) {
    return absl::InvalidArgumentError("realizable learner requires delta > 0");
  }
  if (!(config.beta > 0 && config.beta < 1)) {
    return absl::InvalidArgumentError("beta must lie in (0, 1)");
  }
  if (!(config.constant_scale > 0)) {
    return absl::InvalidArgumentError("constant_scale must be positive");
  }
  if (config.T < 0) return absl::InvalidArgumentError("T must be >= 0");
  RealizableConstants c;
  c.d = ldim;
  c.epsilon0 = config.params.epsilon / 2;
  c.scale = config.faithful_constants ? 1.0 : config.constant_scale;
  double requested = static_cast<double>(config.N0);
  if (config.faithful_constants || config.N0 == 0) {
    requested = c.scale * FaithfulN0(ldim, config.params, config.beta);
  }
  const double floor_n0 = std::exp2(ldim + 1);
  requested = std::max(requested, floor_n0);
  if (!(requested <= std::exp2(62))) {
    return absl::OutOfRangeError(absl::StrCat(
        "N0 = ", requested, " exceeds the 2^62 sequence limit for d = ", ldim));
  }
  c.N0 = NextPowerOfTwo(static_cast<uint64_t>(std::ceil(requested)));
  const double t = std::max<double>(1.0, static_cast<double>(config.T));
  c.svt_margin =
      c.scale * 8 * (std::log(t) + std::log(6 * t / config.beta)) / c.epsilon0;
  return c;
}

absl::StatusOr<std::vector<NodeSequence>> UpdateLayerWithDraws(
    const std::vector<NodeSequence>& sequences, const Soa& soa,
    absl::Span<const int> labels, absl::Span<const size_t> permutation) {
  if (sequences.size() % 2 != 0) {
    return absl::InvalidArgumentError(absl::StrCat(
        "update needs an even number of sequences, got ", sequences.size()));
  }
  const size_t pairs = sequences.size() / 2;
  if (labels.size() < pairs || permutation.size() != pairs) {
    return absl::InvalidArgumentError("update draws do not match pair count");
  }
  std::vector<std::optional<Hypothesis>> outputs(sequences.size());
  for (size_t i = 0; i < sequences.size(); ++i) {
    if (sequences[i].bottom) continue;
    const BitVector v = soa.VersionClassOf(sequences[i].examples);
    if (v.Any()) outputs[i] = *soa.PredictMask(v);
  }
  std::vector<NodeSequence> children(pairs);
  std::vector<bool> used(pairs, false);
  for (size_t i = 0; i < pairs; ++i) {
    const size_t slot = permutation[i];
    if (slot >= pairs || used[slot]) {
      return absl::InvalidArgumentError(
          "update permutation is not a bijection");
    }
    used[slot] = true;
    SiblingView a{sequences[2 * i].bottom, &sequences[2 * i].examples,
                  outputs[2 * i] ? &*outputs[2 * i] : nullptr};
    SiblingView b{sequences[2 * i + 1].bottom, &sequences[2 * i + 1].examples,
                  outputs[2 * i + 1] ? &*outputs[2 * i + 1] : nullptr};
    if (Collides(a, b)) {
      children[slot] = NodeSequence::Of(TournamentChild(a, b, labels[i]));
    }
  }
  return children;
}

absl::StatusOr<std::vector<NodeSequence>> UpdateLayer(
    const std::vector<NodeSequence>& sequences, const Soa& soa, Rng& rng) {
  const size_t pairs = sequences.size() / 2;
  std::vector<int> labels(pairs);
  for (int& y : labels) y = static_cast<int>(rng.UniformInt(2));
  return UpdateLayerWithDraws(sequences, soa, labels,
                              UniformPermutation(pairs, rng));
}

RealizableLearner::RealizableLearner(ClassPtr cls,
                                     RealizableConstants constants,
                                     const RealizableConfig& config)
    : cls_(std::move(cls)),
      soa_(std::make_unique<Soa>(cls_)),
      config_(config),
      constants_(constants) {}

absl::StatusOr<std::unique_ptr<RealizableLearner>> RealizableLearner::Create(
    ClassPtr cls, const RealizableConfig& config, Rng& rng) {
  const int d = LittlestoneDimension(*cls);
  ASSIGN_OR_RETURN(RealizableConstants constants,
                   ResolveRealizableConstants(config, d));
  auto learner = std::unique_ptr<RealizableLearner>(
      new RealizableLearner(std::move(cls), constants, config));
  RealizableLearner& l = *learner;

  // The AboveThreshold instances read disjoint segments of the stream, so
  // together they cost epsilon0; the d histograms split the other epsilon0.
  l.ledger_.Charge("above-threshold", {constants.epsilon0, 0},
                   "all instances, disjoint stream segments");
  for (int s = 1; s <= d; ++s) {
    l.ledger_.Charge("private-histogram",
                     {constants.epsilon0 / d, config.params.delta / d},
                     absl::StrCat("layer ", s), s);
  }

  ASSIGN_OR_RETURN(l.empty_node_, l.MakeNode({}));
  l.frequent_ = {l.pool_[l.empty_node_.soa]};
  l.last_output_ = l.frequent_.front();
  l.max_length_at_layer_start_.push_back(0);
  RETURN_IF_ERROR(l.RestartSvt(rng));
  return learner;
}

int RealizableLearner::Intern(const Hypothesis& h) {
  auto [it, inserted] = pool_index_.emplace(h, static_cast<int>(pool_.size()));
  if (inserted) pool_.push_back(h);
  return it->second;
}

absl::StatusOr<RealizableLearner::Node> RealizableLearner::MakeNode(
    std::vector<LabeledExample> examples) {
  Node node;
  node.version = soa_->VersionClassOf(examples);
  node.examples = std::move(examples);
  if (node.version.Any()) {
    ASSIGN_OR_RETURN(Hypothesis h, soa_->PredictMask(node.version));
    node.soa = Intern(h);
  }
  return node;
}

const RealizableLearner::Node* RealizableLearner::NodeAt(uint64_t index) const {
  auto it = nodes_.find(index);
  if (it != nodes_.end()) return &it->second;
  return layer_ == 0 ? &empty_node_ : nullptr;
}

absl::StatusOr<Hypothesis> RealizableLearner::Predict(Rng&) {
  if (halted_ || frequent_.empty()) return last_output_;
  last_output_ = frequent_.front();
  return last_output_;
}

absl::Status RealizableLearner::Observe(const LabeledExample& example,
                                        Rng& rng) {
  ++round_;
  if (halted_) return absl::OkStatus();
  const Hypothesis& h = frequent_.front();
  const uint64_t pairs = constants_.N(layer_) / 2;
  const uint64_t pair = rng.UniformInt(pairs);
  RETURN_IF_ERROR(InsertExample(pair, example));

  ++probe_.svt_reads;
  const double mistake = h(example.point) != example.label ? 1.0 : 0.0;
  ASSIGN_OR_RETURN(bool above, svt_->Step(mistake, rng));
  if (!above) return absl::OkStatus();

  events_.push_back({RealizableEvent::kSvtAbove, round_, layer_, 0});
  frequent_.erase(frequent_.begin());
  events_.push_back(
      {RealizableEvent::kHeadRemoved, round_, layer_, frequent_.size()});
  while (frequent_.empty() && layer_ < constants_.d) {
    RETURN_IF_ERROR(AdvanceLayer(rng));
    RETURN_IF_ERROR(ReleaseFrequentList(rng));
  }
  if (frequent_.empty()) {
    halted_ = true;
    events_.push_back({RealizableEvent::kHalt, round_, layer_, 0});
    return absl::OkStatus();
  }
  return RestartSvt(rng);
}

absl::Status RealizableLearner::InsertExample(uint64_t pair,
                                              const LabeledExample& example) {
  const Node* first = NodeAt(2 * pair);
  const Node* second = NodeAt(2 * pair + 1);
  if (first == nullptr || second == nullptr) return absl::OkStatus();
  if (first->soa < 0 || first->soa != second->soa) return absl::OkStatus();
  ++probe_.insertion_reads;
  if (pool_[first->soa](example.point) == example.label) {
    return absl::OkStatus();
  }
  std::vector<LabeledExample> extended = first->examples;
  extended.push_back(example);
  ASSIGN_OR_RETURN(Node node, MakeNode(std::move(extended)));
  nodes_[2 * pair] = std::move(node);
  return absl::OkStatus();
}

absl::Status RealizableLearner::AdvanceLayer(Rng& rng) {
  // Pairs with at least one materialized sibling; all others produce bottom
  // children (two empty sequences agree, two bottoms never collide).
  std::vector<uint64_t> pairs;
  for (const auto& [index, node] : nodes_) {
    if (pairs.empty() || pairs.back() != index / 2) pairs.push_back(index / 2);
  }
  const uint64_t child_count = constants_.N(layer_ + 1);
  std::vector<std::pair<uint64_t, std::vector<LabeledExample>>> children;
  for (uint64_t p : pairs) {
    const Node* a = NodeAt(2 * p);
    const Node* b = NodeAt(2 * p + 1);
    SiblingView va{a == nullptr, a ? &a->examples : nullptr,
                   a && a->soa >= 0 ? &pool_[a->soa] : nullptr};
    SiblingView vb{b == nullptr, b ? &b->examples : nullptr,
                   b && b->soa >= 0 ? &pool_[b->soa] : nullptr};
    if (!Collides(va, vb)) continue;
    const int y = static_cast<int>(rng.UniformInt(2));
    children.emplace_back(p, TournamentChild(va, vb, y));
  }

  std::map<uint64_t, Node> next;
  if (child_count <= kDensePermutationLimit) {
    const std::vector<size_t> perm = UniformPermutation(child_count, rng);
    for (auto& [p, examples] : children) {
      ASSIGN_OR_RETURN(Node node, MakeNode(std::move(examples)));
      next.emplace(perm[p], std::move(node));
    }
  } else {
    // Only the images of colliding pairs under a uniform permutation matter;
    // they form a uniform sequence of distinct slots.
    absl::flat_hash_set<uint64_t> taken;
    for (auto& [p, examples] : children) {
      uint64_t slot;
      do {
        slot = rng.UniformInt(child_count);
      } while (!taken.insert(slot).second);
      ASSIGN_OR_RETURN(Node node, MakeNode(std::move(examples)));
      next.emplace(slot, std::move(node));
    }
  }
  nodes_ = std::move(next);
  ++layer_;
  size_t longest = 0;
  for (const auto& [index, node] : nodes_) {
    longest = std::max(longest, node.examples.size());
  }
  max_length_at_layer_start_.push_back(longest);
  events_.push_back(
      {RealizableEvent::kLayerUpdate, round_, layer_, nodes_.size()});
  return absl::OkStatus();
}

absl::Status RealizableLearner::ReleaseFrequentList(Rng& rng) {
  std::vector<Hypothesis> agreeing;
  uint64_t last_pair = std::numeric_limits<uint64_t>::max();
  for (const auto& [index, node] : nodes_) {
    const uint64_t p = index / 2;
    if (p == last_pair) continue;
    last_pair = p;
    const Node* a = NodeAt(2 * p);
    const Node* b = NodeAt(2 * p + 1);
    if (a == nullptr || b == nullptr) continue;
    if (a->soa >= 0 && a->soa == b->soa) agreeing.push_back(pool_[a->soa]);
  }
  const PrivacyParams per_layer{constants_.epsilon0 / constants_.d,
                                config_.params.delta / constants_.d};
  ASSIGN_OR_RETURN(HistogramRelease<Hypothesis> release,
                   PrivateHistogram<Hypothesis>(agreeing, per_layer, rng));
  std::vector<std::pair<double, Hypothesis>> kept;
  const double filter = constants_.filter(layer_);
  for (const auto& [h, count] : release.released()) {
    if (count >= filter) kept.emplace_back(count, h);
  }
  std::stable_sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    return a.first > b.first;
  });
  frequent_.clear();
  for (auto& [count, h] : kept) frequent_.push_back(std::move(h));
  events_.push_back(
      {RealizableEvent::kListReleased, round_, layer_, frequent_.size()});
  return absl::OkStatus();
}

absl::Status RealizableLearner::RestartSvt(Rng& rng) {
  ASSIGN_OR_RETURN(
      AboveThreshold svt,
      AboveThreshold::Create(constants_.epsilon0,
                             constants_.svt_threshold(layer_), rng));
  svt_ = std::move(svt);
  ++svt_instances_;
  return absl::OkStatus();
}

absl::StatusOr<std::vector<NodeSequence>> RealizableLearner::CurrentLayer()
    const {
  const uint64_t n = constants_.N(layer_);
  if (n > kDensePermutationLimit) {
    return absl::ResourceExhaustedError("layer too large to materialize");
  }
  std::vector<NodeSequence> out(n);
  for (uint64_t i = 0; i < n; ++i) {
    const Node* node = NodeAt(i);
    if (node != nullptr) out[i] = NodeSequence::Of(node->examples);
  }
  return out;
}

}  // namespace dpol
