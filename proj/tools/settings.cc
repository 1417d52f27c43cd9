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

#include "settings.h"

#include <cstdlib>

#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "toml.hpp"

namespace dpol::tools {
namespace {

template <typename T>
void Read(const toml::table& tbl, const char* section, const char* key,
          T& out) {
  if (auto v = tbl[section][key].value<T>()) out = *v;
}

}  // namespace

absl::StatusOr<Settings> LoadSettings(const std::string& path, Settings s) {
  toml::table tbl;
  try {
    tbl = toml::parse_file(path);
  } catch (const toml::parse_error& e) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": ", std::string(e.description())));
  }
  Read(tbl, "class", "spec", s.class_spec);
  Read(tbl, "privacy", "epsilon", s.params.epsilon);
  Read(tbl, "privacy", "delta", s.params.delta);
  Read(tbl, "game", "mode", s.mode);
  Read(tbl, "game", "T", s.T);
  int64_t seed = -1;
  Read(tbl, "game", "seed", seed);
  if (seed >= 0) s.seed = static_cast<uint64_t>(seed);
  Read(tbl, "game", "seeds", s.seeds);
  int64_t n0 = -1;
  Read(tbl, "game", "N0", n0);
  if (n0 >= 0) s.N0 = static_cast<uint64_t>(n0);
  Read(tbl, "game", "constant_scale", s.constant_scale);
  Read(tbl, "game", "faithful_constants", s.faithful_constants);
  Read(tbl, "game", "beta", s.beta);
  Read(tbl, "game", "B", s.B);
  Read(tbl, "game", "batch_sanitizer", s.batch_sanitizer);
  Read(tbl, "game", "alpha_target", s.alpha_target);
  int64_t m = s.M;
  Read(tbl, "game", "M", m);
  s.M = static_cast<int>(m);
  Read(tbl, "game", "interval_sanitizer", s.interval_sanitizer);
  Read(tbl, "game", "ope_noiseless", s.ope_noiseless);
  int64_t workers = s.workers;
  Read(tbl, "game", "workers", workers);
  s.workers = static_cast<int>(workers);
  Read(tbl, "adversary", "kind", s.adversary);
  Read(tbl, "adversary", "noise_rate", s.noise_rate);
  Read(tbl, "adversary", "flip_budget", s.flip_budget);
  Read(tbl, "adversary", "target", s.target);
  Read(tbl, "audit", "mechanism", s.audit_mechanism);
  Read(tbl, "audit", "trials", s.audit_trials);
  Read(tbl, "audit", "confidence", s.audit_confidence);
  return s;
}

absl::Status ApplySeedEnv(Settings& settings) {
  const char* env = std::getenv("DPOL_SEED");
  if (env == nullptr || *env == '\0') return absl::OkStatus();
  uint64_t seed = 0;
  if (!absl::SimpleAtoi(env, &seed)) {
    return absl::InvalidArgumentError(
        absl::StrCat("DPOL_SEED is not an unsigned integer: '", env, "'"));
  }
  settings.seed = seed;
  return absl::OkStatus();
}

absl::StatusOr<AdversarySpec> MakeAdversarySpec(const Settings& s) {
  std::string kind = s.adversary;
  if (kind.empty()) {
    kind = s.mode == "realizable" ? "realizable-adaptive" : "agnostic-noise";
  }
  AdversarySpec spec;
  auto parsed = ParseAdversaryKind(kind);
  if (!parsed.ok()) return parsed.status();
  spec.kind = *parsed;
  spec.noise_rate = s.noise_rate;
  spec.flip_budget = s.flip_budget;
  if (s.target >= 0) spec.target = static_cast<size_t>(s.target);
  if (spec.kind == AdversaryKind::kObliviousFixed) {
    return absl::InvalidArgumentError(
        "oblivious-fixed needs a sequence; not available from the CLI");
  }
  return spec;
}

}  // namespace dpol::tools
