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

#include "dpol/dyadic.h"

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace dpol {

DyadicIndex::DyadicIndex(int64_t T) : T_(T), levels_(0) {
  while ((int64_t{1} << levels_) <= T) ++levels_;
}

absl::StatusOr<DyadicIndex> DyadicIndex::Build(int64_t T) {
  if (T < 1 || T > (int64_t{1} << 40)) {
    return absl::InvalidArgumentError(
        absl::StrCat("dyadic index needs 1 <= T <= 2^40, got ", T));
  }
  return DyadicIndex(T);
}

int64_t DyadicIndex::size() const {
  int64_t n = 0;
  for (int j = 0; j < levels_; ++j) n += T_ >> j;
  return n;
}

std::vector<Interval> DyadicIndex::intervals() const {
  std::vector<Interval> out;
  out.reserve(size());
  for (int64_t r = 1; r <= T_; ++r) {
    for (const Interval& iv : EndingAt(r)) out.push_back(iv);
  }
  return out;
}

bool DyadicIndex::Contains(const Interval& iv) const {
  if (iv.l < 1 || iv.r > T_ || iv.l > iv.r) return false;
  const int64_t len = iv.length();
  return (len & (len - 1)) == 0 && iv.r % len == 0;
}

std::vector<Interval> DyadicIndex::EndingAt(int64_t r) const {
  std::vector<Interval> out;
  if (r < 1 || r > T_) return out;
  for (int j = 0; j < levels_; ++j) {
    const int64_t len = int64_t{1} << j;
    if (r % len != 0) break;
    out.push_back({r - len + 1, r});
  }
  return out;
}

int64_t DyadicIndex::Coverage(int64_t t) const {
  if (t < 1 || t > T_) return 0;
  int64_t c = 0;
  for (int j = 0; j < levels_; ++j) {
    const int64_t len = int64_t{1} << j;
    const int64_t r = ((t + len - 1) / len) * len;
    if (r <= T_) ++c;
  }
  return c;
}

absl::StatusOr<std::vector<Interval>> DyadicIndex::Decompose(int64_t l,
                                                             int64_t r) const {
  if (l < 1 || r > T_ || l > r) {
    return absl::OutOfRangeError(
        absl::StrCat("interval [", l, ", ", r, "] outside [1, ", T_, "]"));
  }
  std::vector<Interval> out;
  int64_t start = l;
  while (start <= r) {
    int64_t len = 1;
    while ((start - 1) % (2 * len) == 0 && start + 2 * len - 1 <= r) len *= 2;
    out.push_back({start, start + len - 1});
    start += len;
  }
  return out;
}

}  // namespace dpol
