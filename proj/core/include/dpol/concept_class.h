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

#ifndef DPOL_CONCEPT_CLASS_H_
#define DPOL_CONCEPT_CLASS_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"
#include "dpol/bit_vector.h"

namespace dpol {

// Ordered finite set of named points; points are addressed by index.
class Domain {
 public:
  static absl::StatusOr<Domain> Create(std::vector<std::string> names);
  // Points named "0", "1", ..., "n-1".
  static Domain Indexed(size_t n);

  size_t size() const { return names_.size(); }
  const std::string& name(size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }

  friend bool operator==(const Domain& a, const Domain& b) {
    return a.names_ == b.names_;
  }

 private:
  explicit Domain(std::vector<std::string> names) : names_(std::move(names)) {}
  std::vector<std::string> names_;
};

// A boolean function on a domain, stored as its truth table.
class Hypothesis {
 public:
  Hypothesis() = default;
  explicit Hypothesis(BitVector bits) : bits_(std::move(bits)) {}
  static Hypothesis Constant(size_t n, bool value) {
    return Hypothesis(BitVector(n, value));
  }
  static Hypothesis FromString(const std::string& s) {
    return Hypothesis(BitVector::FromString(s));
  }

  int operator()(size_t x) const { return bits_.Get(x) ? 1 : 0; }
  size_t size() const { return bits_.size(); }
  const BitVector& bits() const { return bits_; }
  Hypothesis Complement() const { return Hypothesis(~bits_); }
  std::string ToString() const { return bits_.ToString(); }

  friend bool operator==(const Hypothesis& a, const Hypothesis& b) {
    return a.bits_ == b.bits_;
  }
  friend bool operator!=(const Hypothesis& a, const Hypothesis& b) {
    return !(a == b);
  }
  friend bool operator<(const Hypothesis& a, const Hypothesis& b) {
    return a.bits_ < b.bits_;
  }
  template <typename H>
  friend H AbslHashValue(H h, const Hypothesis& v) {
    return H::combine(std::move(h), v.bits_);
  }

 private:
  BitVector bits_;
};

struct LabeledExample {
  int point = 0;
  int label = 0;

  friend bool operator==(const LabeledExample& a, const LabeledExample& b) {
    return a.point == b.point && a.label == b.label;
  }
  friend bool operator!=(const LabeledExample& a, const LabeledExample& b) {
    return !(a == b);
  }
  template <typename H>
  friend H AbslHashValue(H h, const LabeledExample& e) {
    return H::combine(std::move(h), e.point, e.label);
  }
};

// Immutable finite concept class: a deduplicated boolean matrix whose rows
// are hypotheses over a shared domain. Version classes are BitVector masks
// over the rows.
class ConceptClass {
 public:
  // Duplicate rows are collapsed, keeping the first occurrence.
  static absl::StatusOr<ConceptClass> Create(Domain domain,
                                             std::vector<Hypothesis> concepts);
  static absl::StatusOr<ConceptClass> FromRows(
      const std::vector<std::vector<int>>& rows);

  const Domain& domain() const { return domain_; }
  size_t num_points() const { return domain_.size(); }
  size_t size() const { return concepts_.size(); }
  const Hypothesis& concept_at(size_t i) const { return concepts_[i]; }
  const std::vector<Hypothesis>& concepts() const { return concepts_; }

  std::optional<size_t> IndexOf(const Hypothesis& h) const;

  BitVector FullMask() const { return BitVector(size(), true); }
  // Concepts h with h(x) = 1.
  const BitVector& PositiveMask(size_t x) const { return positive_[x]; }
  // Concepts consistent with the labeled example.
  const BitVector& ConsistentMask(const LabeledExample& e) const {
    return e.label ? positive_[e.point] : negative_[e.point];
  }

  // Number of mistakes of concept i on the sequence.
  size_t Mistakes(size_t i, const std::vector<LabeledExample>& seq) const;

 private:
  ConceptClass(Domain domain, std::vector<Hypothesis> concepts);

  Domain domain_;
  std::vector<Hypothesis> concepts_;
  std::vector<BitVector> positive_;
  std::vector<BitVector> negative_;
  absl::flat_hash_map<Hypothesis, size_t> index_;
};

using ClassPtr = std::shared_ptr<const ConceptClass>;

// Singletons {1[x = a]} over n points.
ConceptClass PointClass(size_t n);
// Thresholds h_a(x) = 1[x >= a], a in {0..n}, over n points.
ConceptClass ThresholdClass(size_t n);
// All 2^n hypotheses over n points.
absl::StatusOr<ConceptClass> CubeClass(size_t n);

}  // namespace dpol

#endif  // DPOL_CONCEPT_CLASS_H_
