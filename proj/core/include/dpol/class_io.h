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

#ifndef DPOL_CLASS_IO_H_
#define DPOL_CLASS_IO_H_

#include <string>

#include "absl/status/statusor.h"
#include "dpol/concept_class.h"

namespace dpol {

// Parses `{ "domain": ["a", ...], "concepts": [[0, 1, ...], ...] }`.
absl::StatusOr<ConceptClass> ParseClassJson(const std::string& text);
std::string ClassToJson(const ConceptClass& cls);

// Resolves a class specification: `point:<n>`, `thresh:<n>`, `cube:<n>`,
// or a path to a class JSON file.
absl::StatusOr<ConceptClass> LoadClass(const std::string& spec);

}  // namespace dpol

#endif  // DPOL_CLASS_IO_H_
