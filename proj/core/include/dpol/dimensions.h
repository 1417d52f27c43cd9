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

#ifndef DPOL_DIMENSIONS_H_
#define DPOL_DIMENSIONS_H_

#include <cstddef>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"
#include "absl/synchronization/mutex.h"
#include "dpol/bit_vector.h"
#include "dpol/concept_class.h"

namespace dpol {

// Memoized Littlestone dimension of version classes (masks over the concepts
// of one class). The empty version class has dimension -1.
class LittlestoneOracle {
 public:
  explicit LittlestoneOracle(const ConceptClass& cls) : cls_(cls) {}
  LittlestoneOracle(const LittlestoneOracle&) = delete;
  LittlestoneOracle& operator=(const LittlestoneOracle&) = delete;

  int Ldim(const BitVector& mask) const;
  size_t cache_size() const;

 private:
  int LdimLocked(const BitVector& mask, size_t count) const
      ABSL_EXCLUSIVE_LOCKS_REQUIRED(mu_);

  const ConceptClass& cls_;
  mutable absl::Mutex mu_;
  mutable absl::flat_hash_map<BitVector, int> memo_ ABSL_GUARDED_BY(mu_);
};

int LittlestoneDimension(const ConceptClass& cls);
int VcDimension(const ConceptClass& cls);

// Transposed class: domain points become concepts and vice versa.
ConceptClass DualClass(const ConceptClass& cls);

struct ClassDims {
  int ldim = 0;
  int dual_ldim = 0;
  int vc = 0;
  int dual_vc = 0;
};

// Fails with an internal error if vc > ldim or dual_vc > dual_ldim.
absl::StatusOr<ClassDims> ComputeDims(const ConceptClass& cls);

}  // namespace dpol

#endif  // DPOL_DIMENSIONS_H_
