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

#ifndef DPOL_REPORT_H_
#define DPOL_REPORT_H_

#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "dpol/audit.h"
#include "dpol/concept_class.h"
#include "dpol/game.h"

namespace dpol {

// Per-round curve: a header plus one row per round.
std::string TranscriptToCsv(const GameTranscript& transcript,
                            const ConceptClass& cls);

std::string TranscriptToJson(const GameTranscript& transcript);
absl::StatusOr<GameTranscript> TranscriptFromJson(const std::string& text);

std::string RegretToJson(const RegretReport& report);
std::string AuditToJson(const AuditReport& report);

absl::Status WriteFile(const std::string& path, const std::string& contents);
absl::StatusOr<std::string> ReadFile(const std::string& path);

// Writes transcript.json, curve.csv and ledger.json under `dir`.
absl::Status ExportRun(const std::string& dir, const GameTranscript& transcript,
                       const ConceptClass& cls);

}  // namespace dpol

#endif  // DPOL_REPORT_H_
