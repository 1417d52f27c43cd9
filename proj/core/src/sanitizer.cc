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

#include "dpol/sanitizer.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpol/compose.h"
#include "dpol/histogram.h"
#include "dpol/status_macros.h"
#include "nlohmann/json.hpp"

namespace dpol {
namespace {

absl::Status CheckPoints(absl::Span<const int> points, size_t num_points) {
  for (int x : points) {
    if (x < 0 || static_cast<size_t>(x) >= num_points) {
      return absl::OutOfRangeError(
          absl::StrCat("point ", x, " outside domain"));
    }
  }
  return absl::OkStatus();
}

// Largest-remainder apportionment of n units proportional to weights.
std::vector<int64_t> Apportion(absl::Span<const double> weights, int64_t n) {
  std::vector<int64_t> units(weights.size(), 0);
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (total <= 0 || n <= 0) return units;
  std::vector<std::pair<double, size_t>> remainders;
  int64_t assigned = 0;
  for (size_t i = 0; i < weights.size(); ++i) {
    const double exact = n * weights[i] / total;
    units[i] = static_cast<int64_t>(std::floor(exact));
    assigned += units[i];
    remainders.emplace_back(exact - units[i], i);
  }
  std::stable_sort(
      remainders.begin(), remainders.end(),
      [](const auto& a, const auto& b) { return a.first > b.first; });
  for (size_t k = 0; assigned < n; ++k, ++assigned) {
    ++units[remainders[k % remainders.size()].second];
  }
  return units;
}

}  // namespace

std::vector<double> EmpiricalMass(const ConceptClass& cls,
                                  absl::Span<const int> points) {
  std::vector<double> mass(cls.size(), 0.0);
  if (points.empty()) return mass;
  std::vector<int64_t> counts(cls.num_points(), 0);
  for (int x : points) ++counts[x];
  for (size_t i = 0; i < cls.size(); ++i) {
    int64_t c = 0;
    for (size_t x = 0; x < counts.size(); ++x) {
      if (cls.concept_at(i)(x)) c += counts[x];
    }
    mass[i] = static_cast<double>(c) / points.size();
  }
  return mass;
}

double SupError(const SanitizerOutput& out, const ConceptClass& cls,
                absl::Span<const int> points) {
  const std::vector<double> mass = EmpiricalMass(cls, points);
  double worst = 0;
  for (size_t i = 0; i < mass.size(); ++i) {
    worst = std::max(worst, std::abs(out.est[i] - mass[i]));
  }
  return worst;
}

absl::StatusOr<FiniteSanitizerResult> SanitizeFinite(
    absl::Span<const int> points, const ConceptClass& cls,
    const PrivacyParams& params, double alpha_target, Rng& rng) {
  if (points.empty()) return absl::InvalidArgumentError("empty dataset");
  RETURN_IF_ERROR(CheckPoints(points, cls.num_points()));
  ASSIGN_OR_RETURN(HistogramRelease<int> release,
                   PrivateHistogram<int>(points, params, rng));
  FiniteSanitizerResult r;
  r.n = points.size();
  r.histogram_bound = release.bound();
  const double n = static_cast<double>(r.n);
  const double achieved = cls.num_points() * release.bound() / n;
  if (achieved > alpha_target) {
    return absl::FailedPreconditionError(
        absl::StrCat("insufficient data: achieved alpha ", achieved,
                     " exceeds target ", alpha_target, " at n = ", r.n));
  }
  r.noisy_counts.assign(cls.num_points(), 0.0);
  for (const auto& [x, c] : release.released()) r.noisy_counts[x] = c;
  r.output.alpha = achieved;
  r.output.kind = SanitizerKind::kFractional;
  r.output.est.resize(cls.size());
  for (size_t i = 0; i < cls.size(); ++i) {
    double sum = 0;
    for (size_t x = 0; x < cls.num_points(); ++x) {
      if (cls.concept_at(i)(x)) sum += r.noisy_counts[x];
    }
    r.output.est[i] = std::clamp(sum / n, 0.0, 1.0);
  }
  return r;
}

absl::StatusOr<FiniteSanitizerResult> SanitizeLabeled(
    absl::Span<const LabeledExample> data, const ConceptClass& cls,
    const PrivacyParams& params, double alpha_target, Rng& rng) {
  if (data.empty()) return absl::InvalidArgumentError("empty dataset");
  std::vector<int> lifted;
  lifted.reserve(data.size());
  for (const LabeledExample& e : data) {
    if (e.point < 0 || static_cast<size_t>(e.point) >= cls.num_points() ||
        (e.label != 0 && e.label != 1)) {
      return absl::OutOfRangeError("labeled example outside X x {0,1}");
    }
    lifted.push_back(static_cast<int>(LabeledPointIndex(e.point, e.label)));
  }
  return SanitizeFinite(lifted, LabelClass(cls), params, alpha_target, rng);
}

absl::StatusOr<SyntheticDataset> Synthesize(const FiniteSanitizerResult& result,
                                            const ConceptClass& cls) {
  if (result.noisy_counts.size() != cls.num_points()) {
    return absl::InvalidArgumentError("noisy counts do not match the domain");
  }
  const std::vector<int64_t> units =
      Apportion(result.noisy_counts, static_cast<int64_t>(result.n));
  SyntheticDataset out;
  for (size_t x = 0; x < units.size(); ++x) {
    out.points.insert(out.points.end(), units[x], static_cast<int>(x));
  }
  double err = 0;
  if (out.points.empty()) {
    // Nothing was released: the empty dataset has mass 0 everywhere.
    for (double e : result.output.est) err = std::max(err, e);
  } else {
    const std::vector<double> mass = EmpiricalMass(cls, out.points);
    for (size_t i = 0; i < mass.size(); ++i) {
      err = std::max(err, std::abs(mass[i] - result.output.est[i]));
    }
  }
  out.alpha = std::max(result.output.alpha, err);
  return out;
}

std::vector<LabeledExample> DecodeLabeled(absl::Span<const int> points) {
  std::vector<LabeledExample> out;
  out.reserve(points.size());
  for (int z : points) out.push_back({z / 2, z % 2});
  return out;
}

absl::StatusOr<Dataset> ParseDatasetJson(const std::string& text,
                                         size_t num_points) {
  nlohmann::json doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    return absl::InvalidArgumentError("dataset JSON must be an object");
  }
  Dataset d;
  try {
    if (doc.contains("points")) {
      d.points = doc.at("points").get<std::vector<int>>();
      RETURN_IF_ERROR(CheckPoints(d.points, num_points));
    } else if (doc.contains("examples")) {
      d.labeled = true;
      for (const auto& e : doc.at("examples")) {
        LabeledExample ex{e.at(0).get<int>(), e.at(1).get<int>()};
        if (ex.point < 0 || static_cast<size_t>(ex.point) >= num_points ||
            (ex.label != 0 && ex.label != 1)) {
          return absl::OutOfRangeError("example outside X x {0,1}");
        }
        d.examples.push_back(ex);
      }
    } else {
      return absl::InvalidArgumentError(
          "dataset needs a \"points\" or \"examples\" array");
    }
    if (doc.contains("alpha")) d.alpha = doc.at("alpha").get<double>();
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed dataset: ", e.what()));
  }
  return d;
}

std::string DatasetToJson(const Dataset& dataset) {
  nlohmann::json doc = nlohmann::json::object();
  if (dataset.labeled) {
    nlohmann::json ex = nlohmann::json::array();
    for (const LabeledExample& e : dataset.examples) {
      ex.push_back({e.point, e.label});
    }
    doc["examples"] = ex;
  } else {
    doc["points"] = dataset.points;
  }
  if (dataset.alpha) doc["alpha"] = *dataset.alpha;
  return doc.dump() + "\n";
}

}  // namespace dpol
