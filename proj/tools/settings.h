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

#ifndef DPOL_TOOLS_SETTINGS_H_
#define DPOL_TOOLS_SETTINGS_H_

#include <cstdint>
#include <string>

#include "absl/status/statusor.h"
#include "dpol/adversary.h"
#include "dpol/privacy_ledger.h"

namespace dpol::tools {

// Every knob of the CLI; TOML files fill it, flags override it.
struct Settings {
  // [class]
  std::string class_spec = "point:4";
  // [privacy]
  PrivacyParams params{1.0, 1e-6};
  // [game]
  std::string mode = "realizable";
  int64_t T = 1024;
  uint64_t seed = 1;
  int64_t seeds = 1;
  uint64_t N0 = 64;
  double constant_scale = 1.0;
  bool faithful_constants = false;
  double beta = 0.05;
  int64_t B = 0;
  std::string batch_sanitizer = "histogram";
  double alpha_target = 1.0;
  int M = -1;
  std::string interval_sanitizer = "direct";
  bool ope_noiseless = false;
  int workers = 0;
  // [adversary]
  std::string adversary;  // empty: chosen by mode
  double noise_rate = 0.1;
  int64_t flip_budget = 0;
  int64_t target = -1;
  // [audit]
  std::string audit_mechanism = "svt";
  int64_t audit_trials = 100000;
  double audit_confidence = 0.95;
};

absl::StatusOr<Settings> LoadSettings(const std::string& path,
                                      Settings base = {});

// DPOL_SEED, when set, replaces the seed.
absl::Status ApplySeedEnv(Settings& settings);

absl::StatusOr<AdversarySpec> MakeAdversarySpec(const Settings& settings);

}  // namespace dpol::tools

#endif  // DPOL_TOOLS_SETTINGS_H_
