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

#ifndef DPOL_INTERVAL_SANITIZER_H_
#define DPOL_INTERVAL_SANITIZER_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "dpol/dyadic.h"
#include "dpol/privacy_ledger.h"
#include "dpol/rng.h"

namespace dpol {

// A synthetic sequence; empty entries carry no point.
using SyntheticSequence = std::vector<std::optional<int>>;

// Per-interval sanitizer: receives x_l..x_r and returns a synthetic
// sequence of the same length.
using SequenceSanitizer = std::function<absl::StatusOr<SyntheticSequence>(
    absl::Span<const int>, Rng&)>;

// Perfect test double: returns its input.
SequenceSanitizer IdentitySequenceSanitizer();

// Direct realizable sanitizer over a domain of `num_points` points at the
// given per-release budget.
SequenceSanitizer DirectSequenceSanitizer(size_t num_points,
                                          PrivacyParams per_release);

// max_n n * alpha(n) for the direct sanitizer: a point of count at least
// 2 * truncation + 2 is always released, so any f with mass count
// |X| (2 truncation + 2) keeps a point in the release.
absl::StatusOr<double> DirectSequenceDelta(size_t num_points,
                                           const PrivacyParams& per_release);

// Sanitizes every interval of the dyadic index as it completes.
class IntervalSanitizer {
 public:
  // Each release is charged total / MaxCoverage().
  static absl::StatusOr<IntervalSanitizer> Create(int64_t T,
                                                  PrivacyParams total,
                                                  SequenceSanitizer sanitizer);

  // Consumes x_t and releases every member interval ending at t.
  absl::Status Step(int x, Rng& rng);

  int64_t t() const { return static_cast<int64_t>(stream_.size()); }
  const DyadicIndex& index() const { return index_; }
  PrivacyParams per_release() const { return per_release_; }
  const PrivacyLedger& ledger() const { return ledger_; }
  const std::map<std::pair<int64_t, int64_t>, SyntheticSequence>& releases()
      const {
    return releases_;
  }

  // S'_{l,r}: the member release, or the concatenation along the canonical
  // decomposition. Requires r <= t().
  absl::StatusOr<SyntheticSequence> Query(int64_t l, int64_t r) const;

 private:
  IntervalSanitizer(DyadicIndex index, PrivacyParams per_release,
                    SequenceSanitizer sanitizer);

  DyadicIndex index_;
  PrivacyParams per_release_;
  SequenceSanitizer sanitizer_;
  PrivacyLedger ledger_;
  std::vector<int> stream_;
  std::map<std::pair<int64_t, int64_t>, SyntheticSequence> releases_;
};

}  // namespace dpol

#endif  // DPOL_INTERVAL_SANITIZER_H_
