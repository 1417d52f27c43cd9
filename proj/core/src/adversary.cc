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

#include "dpol/adversary.h"

#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpol {
namespace {

class ObliviousAdversary : public Adversary {
 public:
  explicit ObliviousAdversary(std::vector<LabeledExample> seq)
      : seq_(std::move(seq)) {}
  absl::StatusOr<LabeledExample> Next(absl::Span<const Hypothesis> history,
                                      Rng&) override {
    if (history.size() >= seq_.size()) {
      return absl::OutOfRangeError(absl::StrCat(
          "oblivious sequence exhausted after ", seq_.size(), " rounds"));
    }
    return seq_[history.size()];
  }
  bool realizable() const override { return false; }

 private:
  std::vector<LabeledExample> seq_;
};

// Targets the point where the previous hypothesis disagrees with the largest
// share of the surviving version class, and labels it against that
// hypothesis whenever some concept survives the label.
class RealizableAdaptiveAdversary : public Adversary {
 public:
  explicit RealizableAdaptiveAdversary(ClassPtr cls)
      : cls_(std::move(cls)), version_(cls_->FullMask()) {}

  absl::StatusOr<LabeledExample> Next(absl::Span<const Hypothesis> history,
                                      Rng&) override {
    const size_t n = cls_->num_points();
    const Hypothesis prev =
        history.empty() ? Hypothesis::Constant(n, false) : history.back();
    size_t best_x = 0;
    size_t best_count = 0;
    for (size_t x = 0; x < n; ++x) {
      const size_t ones = version_.IntersectionCount(cls_->PositiveMask(x));
      const size_t against = prev(x) ? version_.Count() - ones : ones;
      if (against > best_count) {
        best_count = against;
        best_x = x;
      }
    }
    const int x = static_cast<int>(best_x);
    int y = 1 - prev(best_x);
    if (!version_.Intersects(cls_->ConsistentMask({x, y}))) y = 1 - y;
    version_ &= cls_->ConsistentMask({x, y});
    return LabeledExample{x, y};
  }
  bool realizable() const override { return true; }

 private:
  ClassPtr cls_;
  BitVector version_;
};

class AgnosticNoiseAdversary : public Adversary {
 public:
  AgnosticNoiseAdversary(ClassPtr cls, std::optional<size_t> target, double p)
      : cls_(std::move(cls)), target_(target), p_(p) {}

  absl::StatusOr<LabeledExample> Next(absl::Span<const Hypothesis>,
                                      Rng& rng) override {
    if (!target_) target_ = rng.UniformInt(cls_->size());
    const int x = static_cast<int>(rng.UniformInt(cls_->num_points()));
    int y = cls_->concept_at(*target_)(x);
    if (rng.Bernoulli(p_)) y = 1 - y;
    return LabeledExample{x, y};
  }
  bool realizable() const override { return p_ == 0; }

 private:
  ClassPtr cls_;
  std::optional<size_t> target_;
  double p_;
};

// Labels uniformly drawn points by h*, except that while flips remain it
// contradicts the previous hypothesis wherever that hypothesis agrees with h*.
class AdaptiveAgnosticAdversary : public Adversary {
 public:
  AdaptiveAgnosticAdversary(ClassPtr cls, std::optional<size_t> target,
                            int64_t budget)
      : cls_(std::move(cls)), target_(target), budget_(budget) {}

  absl::StatusOr<LabeledExample> Next(absl::Span<const Hypothesis> history,
                                      Rng& rng) override {
    if (!target_) target_ = rng.UniformInt(cls_->size());
    const int x = static_cast<int>(rng.UniformInt(cls_->num_points()));
    int y = cls_->concept_at(*target_)(x);
    if (budget_ > 0 && !history.empty() && history.back()(x) == y) {
      y = 1 - y;
      --budget_;
    }
    return LabeledExample{x, y};
  }
  bool realizable() const override { return budget_ == 0; }

 private:
  ClassPtr cls_;
  std::optional<size_t> target_;
  int64_t budget_;
};

}  // namespace

absl::StatusOr<AdversaryKind> ParseAdversaryKind(const std::string& name) {
  if (name == "oblivious" || name == "oblivious-fixed") {
    return AdversaryKind::kObliviousFixed;
  }
  if (name == "adaptive" || name == "realizable-adaptive") {
    return AdversaryKind::kRealizableAdaptive;
  }
  if (name == "noise" || name == "agnostic-noise") {
    return AdversaryKind::kAgnosticNoise;
  }
  if (name == "adaptive-agnostic") return AdversaryKind::kAdaptiveAgnostic;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown adversary kind '", name, "'"));
}

std::string AdversaryKindName(AdversaryKind kind) {
  switch (kind) {
    case AdversaryKind::kObliviousFixed:
      return "oblivious-fixed";
    case AdversaryKind::kRealizableAdaptive:
      return "realizable-adaptive";
    case AdversaryKind::kAgnosticNoise:
      return "agnostic-noise";
    case AdversaryKind::kAdaptiveAgnostic:
      return "adaptive-agnostic";
  }
  return "unknown";
}

absl::StatusOr<std::unique_ptr<Adversary>> MakeAdversary(
    const AdversarySpec& spec, ClassPtr cls) {
  if (spec.target && *spec.target >= cls->size()) {
    return absl::InvalidArgumentError("adversary target outside the class");
  }
  if (!(spec.noise_rate >= 0 && spec.noise_rate <= 1)) {
    return absl::InvalidArgumentError("noise rate must lie in [0, 1]");
  }
  for (const LabeledExample& e : spec.sequence) {
    if (e.point < 0 || static_cast<size_t>(e.point) >= cls->num_points() ||
        (e.label != 0 && e.label != 1)) {
      return absl::InvalidArgumentError("oblivious example outside domain");
    }
  }
  switch (spec.kind) {
    case AdversaryKind::kObliviousFixed:
      return std::make_unique<ObliviousAdversary>(spec.sequence);
    case AdversaryKind::kRealizableAdaptive:
      return std::make_unique<RealizableAdaptiveAdversary>(std::move(cls));
    case AdversaryKind::kAgnosticNoise:
      return std::make_unique<AgnosticNoiseAdversary>(
          std::move(cls), spec.target, spec.noise_rate);
    case AdversaryKind::kAdaptiveAgnostic:
      return std::make_unique<AdaptiveAgnosticAdversary>(
          std::move(cls), spec.target, spec.flip_budget);
  }
  return absl::InvalidArgumentError("unknown adversary kind");
}

}  // namespace dpol
