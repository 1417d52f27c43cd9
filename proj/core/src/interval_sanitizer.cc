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

#include "dpol/interval_sanitizer.h"

#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpol/histogram.h"
#include "dpol/realizable_sanitizer.h"
#include "dpol/status_macros.h"

namespace dpol {

SequenceSanitizer IdentitySequenceSanitizer() {
  return
      [](absl::Span<const int> xs, Rng&) -> absl::StatusOr<SyntheticSequence> {
        return SyntheticSequence(xs.begin(), xs.end());
      };
}

SequenceSanitizer DirectSequenceSanitizer(size_t num_points,
                                          PrivacyParams per_release) {
  return
      [num_points, per_release](absl::Span<const int> xs,
                                Rng& rng) -> absl::StatusOr<SyntheticSequence> {
        for (int x : xs) {
          if (x < 0 || static_cast<size_t>(x) >= num_points) {
            return absl::OutOfRangeError(
                absl::StrCat("point ", x, " outside domain"));
          }
        }
        ASSIGN_OR_RETURN(HistogramRelease<int> release,
                         PrivateHistogram<int>(xs, per_release, rng));
        std::vector<double> counts(num_points, 0.0);
        for (const auto& [x, c] : release.released()) counts[x] = c;
        return RealizableSyntheticSequence(counts, xs.size());
      };
}

absl::StatusOr<double> DirectSequenceDelta(size_t num_points,
                                           const PrivacyParams& per_release) {
  ASSIGN_OR_RETURN(HistogramCalibration cal, CalibrateHistogram(per_release));
  return static_cast<double>(num_points) * (2 * cal.truncation + 2);
}

IntervalSanitizer::IntervalSanitizer(DyadicIndex index,
                                     PrivacyParams per_release,
                                     SequenceSanitizer sanitizer)
    : index_(std::move(index)),
      per_release_(per_release),
      sanitizer_(std::move(sanitizer)) {}

absl::StatusOr<IntervalSanitizer> IntervalSanitizer::Create(
    int64_t T, PrivacyParams total, SequenceSanitizer sanitizer) {
  ASSIGN_OR_RETURN(DyadicIndex index, DyadicIndex::Build(T));
  if (!sanitizer) return absl::InvalidArgumentError("missing sanitizer");
  const double c = static_cast<double>(index.MaxCoverage());
  IntervalSanitizer s(std::move(index), {total.epsilon / c, total.delta / c},
                      std::move(sanitizer));
  s.ledger_.Charge("interval-sanitizer", total,
                   absl::StrCat("each x_t read by <= ", s.index_.MaxCoverage(),
                                " releases"));
  return s;
}

absl::Status IntervalSanitizer::Step(int x, Rng& rng) {
  if (t() >= index_.T()) {
    return absl::OutOfRangeError("interval sanitizer is past its horizon");
  }
  stream_.push_back(x);
  const int64_t now = t();
  for (const Interval& iv : index_.EndingAt(now)) {
    absl::Span<const int> window(stream_.data() + iv.l - 1, iv.length());
    absl::StatusOr<SyntheticSequence> release = sanitizer_(window, rng);
    if (!release.ok()) {
      return absl::Status(release.status().code(),
                          absl::StrCat("interval [", iv.l, ", ", iv.r,
                                       "]: ", release.status().message()));
    }
    if (release->size() != static_cast<size_t>(iv.length())) {
      return absl::InternalError(absl::StrCat(
          "interval [", iv.l, ", ", iv.r, "]: release has the wrong length"));
    }
    releases_[{iv.l, iv.r}] = *std::move(release);
  }
  return absl::OkStatus();
}

absl::StatusOr<SyntheticSequence> IntervalSanitizer::Query(int64_t l,
                                                           int64_t r) const {
  if (r > t()) {
    return absl::FailedPreconditionError(
        absl::StrCat("interval ending at ", r, " not yet released"));
  }
  ASSIGN_OR_RETURN(std::vector<Interval> pieces, index_.Decompose(l, r));
  SyntheticSequence out;
  out.reserve(r - l + 1);
  for (const Interval& iv : pieces) {
    const SyntheticSequence& part = releases_.at({iv.l, iv.r});
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace dpol
