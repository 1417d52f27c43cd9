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

#include "dpol/concept_class.h"

#include <utility>

#include "absl/container/flat_hash_set.h"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpol {

absl::StatusOr<Domain> Domain::Create(std::vector<std::string> names) {
  if (names.empty()) {
    return absl::InvalidArgumentError("domain must be nonempty");
  }
  absl::flat_hash_set<std::string> seen;
  for (const std::string& n : names) {
    if (!seen.insert(n).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate domain point '", n, "'"));
    }
  }
  return Domain(std::move(names));
}

Domain Domain::Indexed(size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (size_t i = 0; i < n; ++i) names.push_back(absl::StrCat(i));
  return Domain(std::move(names));
}

absl::StatusOr<ConceptClass> ConceptClass::Create(
    Domain domain, std::vector<Hypothesis> concepts) {
  if (concepts.empty()) {
    return absl::InvalidArgumentError("concept class must be nonempty");
  }
  std::vector<Hypothesis> unique;
  absl::flat_hash_set<Hypothesis> seen;
  for (Hypothesis& h : concepts) {
    if (h.size() != domain.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("hypothesis length ", h.size(), " does not match ",
                       "domain size ", domain.size()));
    }
    if (seen.insert(h).second) unique.push_back(std::move(h));
  }
  return ConceptClass(std::move(domain), std::move(unique));
}

absl::StatusOr<ConceptClass> ConceptClass::FromRows(
    const std::vector<std::vector<int>>& rows) {
  if (rows.empty()) {
    return absl::InvalidArgumentError("concept class must be nonempty");
  }
  std::vector<Hypothesis> concepts;
  for (const auto& row : rows) {
    concepts.emplace_back(BitVector::FromBits(row));
  }
  return Create(Domain::Indexed(rows.front().size()), std::move(concepts));
}

ConceptClass::ConceptClass(Domain domain, std::vector<Hypothesis> concepts)
    : domain_(std::move(domain)), concepts_(std::move(concepts)) {
  const size_t n = domain_.size();
  positive_.assign(n, BitVector(concepts_.size()));
  for (size_t i = 0; i < concepts_.size(); ++i) {
    index_.emplace(concepts_[i], i);
    for (size_t x = 0; x < n; ++x) {
      if (concepts_[i](x)) positive_[x].Set(i);
    }
  }
  negative_.reserve(n);
  for (size_t x = 0; x < n; ++x) negative_.push_back(~positive_[x]);
}

std::optional<size_t> ConceptClass::IndexOf(const Hypothesis& h) const {
  auto it = index_.find(h);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

size_t ConceptClass::Mistakes(size_t i,
                              const std::vector<LabeledExample>& seq) const {
  size_t m = 0;
  for (const LabeledExample& e : seq) {
    if (concepts_[i](e.point) != e.label) ++m;
  }
  return m;
}

ConceptClass PointClass(size_t n) {
  std::vector<Hypothesis> concepts;
  for (size_t a = 0; a < n; ++a) {
    BitVector bits(n);
    bits.Set(a);
    concepts.emplace_back(std::move(bits));
  }
  return *ConceptClass::Create(Domain::Indexed(n), std::move(concepts));
}

ConceptClass ThresholdClass(size_t n) {
  std::vector<Hypothesis> concepts;
  for (size_t a = 0; a <= n; ++a) {
    BitVector bits(n);
    for (size_t x = a; x < n; ++x) bits.Set(x);
    concepts.emplace_back(std::move(bits));
  }
  return *ConceptClass::Create(Domain::Indexed(n), std::move(concepts));
}

absl::StatusOr<ConceptClass> CubeClass(size_t n) {
  if (n == 0 || n > 20) {
    return absl::InvalidArgumentError(
        absl::StrCat("cube dimension must be in [1, 20], got ", n));
  }
  std::vector<Hypothesis> concepts;
  for (uint64_t mask = 0; mask < (uint64_t{1} << n); ++mask) {
    BitVector bits(n);
    for (size_t x = 0; x < n; ++x) {
      if ((mask >> x) & 1u) bits.Set(x);
    }
    concepts.emplace_back(std::move(bits));
  }
  return ConceptClass::Create(Domain::Indexed(n), std::move(concepts));
}

}  // namespace dpol
