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

#ifndef DPOL_DYADIC_H_
#define DPOL_DYADIC_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"

namespace dpol {

// Closed 1-based interval [l, r].
struct Interval {
  int64_t l = 1;
  int64_t r = 1;
  int64_t length() const { return r - l + 1; }
  friend bool operator==(const Interval& a, const Interval& b) {
    return a.l == b.l && a.r == b.r;
  }
  friend bool operator<(const Interval& a, const Interval& b) {
    return a.r != b.r ? a.r < b.r : a.l > b.l;
  }
};

// The dyadic intervals [(k-1) 2^j + 1, k 2^j] inside [1, T].
class DyadicIndex {
 public:
  static absl::StatusOr<DyadicIndex> Build(int64_t T);

  int64_t T() const { return T_; }
  int levels() const { return levels_; }
  // Number of intervals, sum_j floor(T / 2^j) <= 2T - 1.
  int64_t size() const;
  // All intervals ordered by right endpoint, shortest first.
  std::vector<Interval> intervals() const;
  bool Contains(const Interval& iv) const;
  // Members with right endpoint r, shortest first.
  std::vector<Interval> EndingAt(int64_t r) const;
  // Members containing t.
  int64_t Coverage(int64_t t) const;
  // Canonical left-to-right cover of [l, r] by members.
  absl::StatusOr<std::vector<Interval>> Decompose(int64_t l, int64_t r) const;

  // floor(log2 T) + 1.
  int64_t MaxCoverage() const { return levels_; }
  // 2 floor(log2 T) + 2.
  int64_t MaxPieces() const { return 2 * (levels_ - 1) + 2; }

 private:
  explicit DyadicIndex(int64_t T);

  int64_t T_;
  int levels_;
};

}  // namespace dpol

#endif  // DPOL_DYADIC_H_
