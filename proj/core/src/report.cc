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

#include "dpol/report.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "dpol/status_macros.h"
#include "nlohmann/json.hpp"

namespace dpol {
namespace {

using nlohmann::json;

// JSON has no infinities.
json Real(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : "-inf";
}

bool IsBitString(const std::string& s) {
  return s.find_first_not_of("01") == std::string::npos;
}

}  // namespace

std::string TranscriptToCsv(const GameTranscript& transcript,
                            const ConceptClass& cls) {
  std::string out =
      "round,point,label,hypothesis,mistake,cumulative_mistakes,"
      "cumulative_regret\n";
  std::vector<int64_t> per_concept(cls.size(), 0);
  int64_t mistakes = 0;
  for (size_t t = 0; t < transcript.rounds.size(); ++t) {
    const GameRound& r = transcript.rounds[t];
    mistakes += r.mistake;
    int64_t best = mistakes;
    for (size_t i = 0; i < cls.size(); ++i) {
      per_concept[i] += cls.concept_at(i)(r.example.point) != r.example.label;
      best = std::min(best, per_concept[i]);
    }
    absl::StrAppend(&out, t + 1, ",", r.example.point, ",", r.example.label,
                    ",", r.hypothesis, ",", r.mistake, ",", mistakes, ",",
                    mistakes - best, "\n");
  }
  return out;
}

std::string TranscriptToJson(const GameTranscript& transcript) {
  json hyps = json::array();
  for (const Hypothesis& h : transcript.hypotheses)
    hyps.push_back(h.ToString());
  json rounds = json::array();
  for (const GameRound& r : transcript.rounds) {
    rounds.push_back(
        {r.hypothesis, r.example.point, r.example.label, r.mistake});
  }
  json doc = {{"hypotheses", hyps},
              {"rounds", rounds},
              {"ledger", json::parse(transcript.ledger.ToJson())},
              {"meta", transcript.meta},
              {"seed", transcript.seed},
              {"halted_at", transcript.halted_at},
              {"degraded", transcript.degraded},
              {"truncated", transcript.truncated}};
  return doc.dump(1) + "\n";
}

absl::StatusOr<GameTranscript> TranscriptFromJson(const std::string& text) {
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    return absl::InvalidArgumentError("transcript JSON must be an object");
  }
  GameTranscript t;
  try {
    for (const auto& h : doc.at("hypotheses")) {
      const std::string s = h.get<std::string>();
      if (!IsBitString(s)) {
        return absl::InvalidArgumentError("hypothesis is not a bit string");
      }
      t.hypotheses.push_back(Hypothesis::FromString(s));
    }
    for (const auto& r : doc.at("rounds")) {
      GameRound round;
      round.hypothesis = r.at(0).get<int>();
      round.example = {r.at(1).get<int>(), r.at(2).get<int>()};
      round.mistake = r.at(3).get<int>();
      if (round.hypothesis < 0 ||
          static_cast<size_t>(round.hypothesis) >= t.hypotheses.size()) {
        return absl::InvalidArgumentError("round names an unknown hypothesis");
      }
      t.rounds.push_back(round);
    }
    ASSIGN_OR_RETURN(t.ledger,
                     PrivacyLedger::FromJson(doc.at("ledger").dump()));
    t.meta = doc.at("meta").get<std::map<std::string, std::string>>();
    t.seed = doc.at("seed").get<uint64_t>();
    t.halted_at = doc.at("halted_at").get<int64_t>();
    t.degraded = doc.at("degraded").get<bool>();
    t.truncated = doc.at("truncated").get<bool>();
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed transcript: ", e.what()));
  }
  return t;
}

std::string RegretToJson(const RegretReport& report) {
  json doc = {{"mistakes", report.mistakes},
              {"best_in_hindsight", report.best_in_hindsight},
              {"best_concept", report.best_concept},
              {"regret", report.regret}};
  return doc.dump(1) + "\n";
}

std::string AuditToJson(const AuditReport& report) {
  json events = json::array();
  for (const EventEstimate& e : report.events) {
    events.push_back({{"pair", e.pair},
                      {"event", e.event},
                      {"count_first", e.count_first},
                      {"count_second", e.count_second},
                      {"epsilon_hat", Real(e.epsilon_hat)},
                      {"epsilon_lower", Real(e.epsilon_lower)},
                      {"uninformative", e.uninformative}});
  }
  json doc = {{"epsilon_hat", Real(report.epsilon_hat)},
              {"epsilon_lower", Real(report.epsilon_lower)},
              {"epsilon_upper", Real(report.epsilon_upper)},
              {"trials", report.trials},
              {"confidence", report.confidence},
              {"family", report.family},
              {"uninformative_events", report.uninformative_events},
              {"uninformative", report.uninformative},
              {"violation", report.violation},
              {"events", events}};
  return doc.dump(1) + "\n";
}

absl::Status WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot open ", path));
  out << contents;
  out.close();
  if (!out) return absl::DataLossError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

absl::Status ExportRun(const std::string& dir, const GameTranscript& transcript,
                       const ConceptClass& cls) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    return absl::UnavailableError(
        absl::StrCat("cannot create ", dir, ": ", ec.message()));
  }
  const std::filesystem::path base(dir);
  RETURN_IF_ERROR(WriteFile((base / "transcript.json").string(),
                            TranscriptToJson(transcript)));
  RETURN_IF_ERROR(WriteFile((base / "curve.csv").string(),
                            TranscriptToCsv(transcript, cls)));
  return WriteFile((base / "ledger.json").string(),
                   json::parse(transcript.ledger.ToJson()).dump(1) + "\n");
}

}  // namespace dpol
