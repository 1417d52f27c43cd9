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

#include "dpol/compose.h"

#include <cmath>
#include <string>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpol {
namespace {

constexpr double kMaxProduct = 1 << 22;

// Visits index tuples in [0, sizes[0]) x ... in odometer order. With
// `nondecreasing`, only tuples i_1 <= i_2 <= ... are visited (all sizes must
// then be equal).
void ForEachTuple(const std::vector<size_t>& sizes, bool nondecreasing,
                  const std::function<void(const std::vector<size_t>&)>& fn) {
  const size_t k = sizes.size();
  std::vector<size_t> idx(k, 0);
  while (true) {
    fn(idx);
    size_t pos = k;
    while (pos > 0) {
      --pos;
      if (++idx[pos] < sizes[pos]) {
        if (nondecreasing) {
          for (size_t q = pos + 1; q < k; ++q) idx[q] = idx[pos];
        } else {
          for (size_t q = pos + 1; q < k; ++q) idx[q] = 0;
        }
        break;
      }
      if (pos == 0) return;
    }
    if (k == 0) return;
  }
}

}  // namespace

absl::StatusOr<ConceptClass> ComposeBoolean(
    const std::vector<const ConceptClass*>& classes, const BooleanGate& gate) {
  if (classes.empty()) {
    return absl::InvalidArgumentError("compose needs at least one class");
  }
  const Domain& domain = classes.front()->domain();
  double product = 1;
  std::vector<size_t> sizes;
  for (const ConceptClass* c : classes) {
    if (!(c->domain() == domain)) {
      return absl::InvalidArgumentError("composed classes must share a domain");
    }
    sizes.push_back(c->size());
    product *= static_cast<double>(c->size());
  }
  if (product > kMaxProduct) {
    return absl::ResourceExhaustedError(
        absl::StrCat("product class too large: ", product, " tuples"));
  }
  const size_t n = domain.size();
  std::vector<Hypothesis> rows;
  std::vector<int> bits(classes.size());
  ForEachTuple(sizes, false, [&](const std::vector<size_t>& idx) {
    BitVector row(n);
    for (size_t x = 0; x < n; ++x) {
      for (size_t j = 0; j < idx.size(); ++j) {
        bits[j] = classes[j]->concept_at(idx[j])(x);
      }
      if (gate(bits)) row.Set(x);
    }
    rows.emplace_back(std::move(row));
  });
  return ConceptClass::Create(domain, std::move(rows));
}

ConceptClass LabelClass(const ConceptClass& cls) {
  const size_t n = cls.num_points();
  std::vector<std::string> names;
  names.reserve(2 * n);
  for (size_t x = 0; x < n; ++x) {
    names.push_back(absl::StrCat(cls.domain().name(x), "|0"));
    names.push_back(absl::StrCat(cls.domain().name(x), "|1"));
  }
  std::vector<Hypothesis> rows;
  rows.reserve(cls.size());
  for (const Hypothesis& h : cls.concepts()) {
    BitVector row(2 * n);
    for (size_t x = 0; x < n; ++x) {
      if (h(x) != 0) row.Set(LabeledPointIndex(x, 0));
      if (h(x) != 1) row.Set(LabeledPointIndex(x, 1));
    }
    rows.emplace_back(std::move(row));
  }
  return *ConceptClass::Create(*Domain::Create(std::move(names)),
                               std::move(rows));
}

absl::StatusOr<ConceptClass> MajorityClass(const ConceptClass& cls, size_t m) {
  if (m == 0) return absl::InvalidArgumentError("majority needs m >= 1");
  if (std::pow(static_cast<double>(cls.size()), m) > kMaxProduct) {
    return absl::ResourceExhaustedError("majority class too large");
  }
  const size_t n = cls.num_points();
  std::vector<Hypothesis> rows;
  ForEachTuple(std::vector<size_t>(m, cls.size()), true,
               [&](const std::vector<size_t>& idx) {
                 BitVector row(n);
                 for (size_t x = 0; x < n; ++x) {
                   size_t votes = 0;
                   for (size_t i : idx) votes += cls.concept_at(i)(x);
                   if (2 * votes >= m) row.Set(x);
                 }
                 rows.emplace_back(std::move(row));
               });
  return ConceptClass::Create(cls.domain(), std::move(rows));
}

ConceptClass XorClass(const ConceptClass& a, const ConceptClass& b) {
  return *ComposeBoolean(
      {&a, &b}, [](absl::Span<const int> v) { return (v[0] ^ v[1]) != 0; });
}

absl::StatusOr<ConceptClass> ThresholdFractionClass(const ConceptClass& cls,
                                                    size_t m, double t) {
  if (m == 0) {
    return absl::InvalidArgumentError("threshold fraction needs m >= 1");
  }
  const size_t n = cls.num_points();
  if (std::pow(static_cast<double>(n), m) > kMaxProduct) {
    return absl::ResourceExhaustedError("threshold fraction class too large");
  }
  // Smallest vote count c with c / m >= t.
  const double need = std::ceil(t * static_cast<double>(m) - 1e-9);
  std::vector<std::string> names;
  for (size_t i = 0; i < cls.size(); ++i) names.push_back(absl::StrCat("h", i));
  std::vector<Hypothesis> rows;
  ForEachTuple(std::vector<size_t>(m, n), true,
               [&](const std::vector<size_t>& idx) {
                 BitVector row(cls.size());
                 for (size_t i = 0; i < cls.size(); ++i) {
                   double votes = 0;
                   for (size_t x : idx) votes += cls.concept_at(i)(x);
                   if (votes >= need) row.Set(i);
                 }
                 rows.emplace_back(std::move(row));
               });
  return ConceptClass::Create(*Domain::Create(std::move(names)),
                              std::move(rows));
}

}  // namespace dpol
