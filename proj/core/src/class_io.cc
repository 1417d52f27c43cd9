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

#include "dpol/class_io.h"

#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "nlohmann/json.hpp"

namespace dpol {

using json = nlohmann::json;

absl::StatusOr<ConceptClass> ParseClassJson(const std::string& text) {
  json doc = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) {
    return absl::InvalidArgumentError("class file is not a JSON object");
  }
  if (!doc.contains("domain") || !doc["domain"].is_array()) {
    return absl::InvalidArgumentError("class file lacks a 'domain' array");
  }
  if (!doc.contains("concepts") || !doc["concepts"].is_array()) {
    return absl::InvalidArgumentError("class file lacks a 'concepts' array");
  }
  std::vector<std::string> names;
  for (const json& p : doc["domain"]) {
    names.push_back(p.is_string() ? p.get<std::string>() : p.dump());
  }
  auto domain = Domain::Create(std::move(names));
  if (!domain.ok()) return domain.status();
  std::vector<Hypothesis> concepts;
  for (const json& row : doc["concepts"]) {
    if (!row.is_array() || row.size() != domain->size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("concept row must have ", domain->size(), " entries"));
    }
    BitVector bits(domain->size());
    for (size_t x = 0; x < row.size(); ++x) {
      if (!row[x].is_number_integer() ||
          (row[x].get<int>() != 0 && row[x].get<int>() != 1)) {
        return absl::InvalidArgumentError("concept entries must be 0 or 1");
      }
      if (row[x].get<int>() == 1) bits.Set(x);
    }
    concepts.emplace_back(std::move(bits));
  }
  return ConceptClass::Create(*std::move(domain), std::move(concepts));
}

std::string ClassToJson(const ConceptClass& cls) {
  json doc;
  doc["domain"] = cls.domain().names();
  json rows = json::array();
  for (const Hypothesis& h : cls.concepts()) rows.push_back(h.bits().ToBits());
  doc["concepts"] = std::move(rows);
  return doc.dump();
}

absl::StatusOr<ConceptClass> LoadClass(const std::string& spec) {
  std::vector<std::string> parts =
      absl::StrSplit(spec, absl::MaxSplits(':', 1));
  if (parts.size() == 2) {
    size_t n = 0;
    if (parts[0] == "point" || parts[0] == "thresh" || parts[0] == "cube") {
      if (!absl::SimpleAtoi(parts[1], &n) || n == 0) {
        return absl::InvalidArgumentError(
            absl::StrCat("bad class size in '", spec, "'"));
      }
      if (parts[0] == "point") return PointClass(n);
      if (parts[0] == "thresh") return ThresholdClass(n);
      return CubeClass(n);
    }
  }
  std::ifstream in(spec);
  if (!in) {
    return absl::NotFoundError(absl::StrCat("cannot open class '", spec, "'"));
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseClassJson(buf.str());
}

}  // namespace dpol
