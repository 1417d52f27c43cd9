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

#include "dpol/dimensions.h"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "absl/container/flat_hash_set.h"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpol {
namespace {

int FloorLog2(size_t n) { return static_cast<int>(std::bit_width(n)) - 1; }

}  // namespace

int LittlestoneOracle::Ldim(const BitVector& mask) const {
  const size_t count = mask.Count();
  if (count == 0) return -1;
  if (count == 1) return 0;
  absl::MutexLock lock(&mu_);
  return LdimLocked(mask, count);
}

size_t LittlestoneOracle::cache_size() const {
  absl::MutexLock lock(&mu_);
  return memo_.size();
}

int LittlestoneOracle::LdimLocked(const BitVector& mask, size_t count) const {
  if (count == 0) return -1;
  if (count == 1) return 0;
  if (auto it = memo_.find(mask); it != memo_.end()) return it->second;
  const int upper = FloorLog2(count);
  int best = 0;
  for (size_t x = 0; x < cls_.num_points() && best < upper; ++x) {
    BitVector ones = mask & cls_.PositiveMask(x);
    const size_t c1 = ones.Count();
    if (c1 == 0 || c1 == count) continue;
    const size_t c0 = count - c1;
    // A side with k concepts has dimension at most floor(log2 k).
    if (FloorLog2(std::min(c0, c1)) + 1 <= best) continue;
    BitVector zeros = mask & cls_.ConsistentMask({static_cast<int>(x), 0});
    const bool zeros_first = c0 <= c1;
    const int first =
        zeros_first ? LdimLocked(zeros, c0) : LdimLocked(ones, c1);
    if (first + 1 <= best) continue;
    const int second =
        zeros_first ? LdimLocked(ones, c1) : LdimLocked(zeros, c0);
    best = std::max(best, std::min(first, second) + 1);
  }
  memo_.emplace(mask, best);
  return best;
}

int LittlestoneDimension(const ConceptClass& cls) {
  LittlestoneOracle oracle(cls);
  return oracle.Ldim(cls.FullMask());
}

namespace {

bool Shattered(const ConceptClass& cls, const std::vector<size_t>& points) {
  absl::flat_hash_set<uint64_t> patterns;
  const uint64_t target = uint64_t{1} << points.size();
  for (const Hypothesis& h : cls.concepts()) {
    uint64_t p = 0;
    for (size_t k = 0; k < points.size(); ++k) {
      p |= static_cast<uint64_t>(h(points[k])) << k;
    }
    patterns.insert(p);
    if (patterns.size() == target) return true;
  }
  return false;
}

// Depth-first growth of shattered sets in increasing point order; shattered
// sets are closed under taking subsets, so unshattered prefixes are pruned.
void GrowShattered(const ConceptClass& cls, std::vector<size_t>& current,
                   size_t next, int cap, int& best) {
  best = std::max(best, static_cast<int>(current.size()));
  if (best >= cap) return;
  for (size_t x = next; x < cls.num_points(); ++x) {
    current.push_back(x);
    if (Shattered(cls, current)) GrowShattered(cls, current, x + 1, cap, best);
    current.pop_back();
    if (best >= cap) return;
  }
}

}  // namespace

int VcDimension(const ConceptClass& cls) {
  const int cap =
      std::min<int>(FloorLog2(cls.size()), static_cast<int>(cls.num_points()));
  std::vector<size_t> current;
  int best = 0;
  GrowShattered(cls, current, 0, cap, best);
  return best;
}

ConceptClass DualClass(const ConceptClass& cls) {
  std::vector<std::string> names;
  names.reserve(cls.size());
  for (size_t i = 0; i < cls.size(); ++i) names.push_back(absl::StrCat("h", i));
  std::vector<Hypothesis> rows;
  rows.reserve(cls.num_points());
  for (size_t x = 0; x < cls.num_points(); ++x) {
    rows.emplace_back(cls.PositiveMask(x));
  }
  return *ConceptClass::Create(*Domain::Create(std::move(names)),
                               std::move(rows));
}

absl::StatusOr<ClassDims> ComputeDims(const ConceptClass& cls) {
  ClassDims dims;
  dims.ldim = LittlestoneDimension(cls);
  dims.vc = VcDimension(cls);
  const ConceptClass dual = DualClass(cls);
  dims.dual_ldim = LittlestoneDimension(dual);
  dims.dual_vc = VcDimension(dual);
  if (dims.vc > dims.ldim || dims.dual_vc > dims.dual_ldim) {
    return absl::InternalError(absl::StrCat(
        "dimension invariant violated: vc=", dims.vc, " ldim=", dims.ldim,
        " dual_vc=", dims.dual_vc, " dual_ldim=", dims.dual_ldim));
  }
  return dims;
}

}  // namespace dpol
