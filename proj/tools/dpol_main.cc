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

// dpol: command line front end for the private online learning simulator.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "dpol/agnostic_pipeline.h"
#include "dpol/audit.h"
#include "dpol/audit_scenarios.h"
#include "dpol/class_io.h"
#include "dpol/compose.h"
#include "dpol/dimensions.h"
#include "dpol/dyadic.h"
#include "dpol/experts.h"
#include "dpol/game.h"
#include "dpol/interval_sanitizer.h"
#include "dpol/parallel.h"
#include "dpol/private_ope.h"
#include "dpol/realizable_sanitizer.h"
#include "dpol/report.h"
#include "dpol/sanitizer.h"
#include "dpol/soa.h"
#include "dpol/status_macros.h"
#include "nlohmann/json.hpp"
#include "settings.h"

namespace dpol::tools {
namespace {

using json = nlohmann::json;

// Flag values that override the config file when given.
struct Overrides {
  std::string config;
  std::optional<std::string> class_spec, mode, batch_sanitizer,
      interval_sanitizer, adversary, mechanism;
  std::optional<double> epsilon, delta, constant_scale, beta, alpha_target,
      noise_rate, confidence;
  std::optional<int64_t> T, seeds, B, flip_budget, target, trials;
  std::optional<uint64_t> seed, N0;
  std::optional<int> M, workers;
  bool faithful = false;
  bool ope_noiseless = false;
  std::string out;
};

void AddCommon(CLI::App* cmd, Overrides& o) {
  cmd->add_option("-c,--config", o.config, "TOML configuration file");
  cmd->add_option("--class", o.class_spec,
                  "point:<n>, thresh:<n>, cube:<n> or a class JSON file");
  cmd->add_option("--epsilon", o.epsilon, "privacy epsilon");
  cmd->add_option("--delta", o.delta, "privacy delta");
  cmd->add_option("--seed", o.seed, "base seed");
  cmd->add_option("--workers", o.workers, "worker threads (0: hardware)");
  cmd->add_option("--out", o.out, "output directory or file");
}

absl::StatusOr<Settings> Resolve(const Overrides& o) {
  Settings s;
  if (!o.config.empty()) {
    ASSIGN_OR_RETURN(s, LoadSettings(o.config));
  }
  RETURN_IF_ERROR(ApplySeedEnv(s));
  if (o.class_spec) s.class_spec = *o.class_spec;
  if (o.mode) s.mode = *o.mode;
  if (o.epsilon) s.params.epsilon = *o.epsilon;
  if (o.delta) s.params.delta = *o.delta;
  if (o.T) s.T = *o.T;
  if (o.seed) s.seed = *o.seed;
  if (o.seeds) s.seeds = *o.seeds;
  if (o.N0) s.N0 = *o.N0;
  if (o.constant_scale) s.constant_scale = *o.constant_scale;
  if (o.faithful) s.faithful_constants = true;
  if (o.beta) s.beta = *o.beta;
  if (o.B) s.B = *o.B;
  if (o.batch_sanitizer) s.batch_sanitizer = *o.batch_sanitizer;
  if (o.alpha_target) s.alpha_target = *o.alpha_target;
  if (o.M) s.M = *o.M;
  if (o.interval_sanitizer) s.interval_sanitizer = *o.interval_sanitizer;
  if (o.ope_noiseless) s.ope_noiseless = true;
  if (o.workers) s.workers = *o.workers;
  if (o.adversary) s.adversary = *o.adversary;
  if (o.noise_rate) s.noise_rate = *o.noise_rate;
  if (o.flip_budget) s.flip_budget = *o.flip_budget;
  if (o.target) s.target = *o.target;
  if (o.mechanism) s.audit_mechanism = *o.mechanism;
  if (o.trials) s.audit_trials = *o.trials;
  if (o.confidence) s.audit_confidence = *o.confidence;
  if (s.seeds < 1) return absl::InvalidArgumentError("seeds must be >= 1");
  return s;
}

absl::StatusOr<ClassPtr> LoadClassPtr(const std::string& spec) {
  ASSIGN_OR_RETURN(ConceptClass cls, LoadClass(spec));
  return std::make_shared<const ConceptClass>(std::move(cls));
}

absl::StatusOr<GameTranscript> RunOne(const Settings& s, ClassPtr cls,
                                      const AdversarySpec& spec, Rng& rng) {
  if (s.mode == "realizable") {
    RealizableConfig config;
    config.T = s.T;
    config.params = s.params;
    config.beta = s.beta;
    config.N0 = s.N0;
    config.constant_scale = s.constant_scale;
    config.faithful_constants = s.faithful_constants;
    return RunRealizable(cls, config, spec, rng);
  }
  if (s.mode == "agnostic-batch") {
    AgnosticBatchConfig config;
    config.T = s.T;
    config.B = s.B;
    config.params = s.params;
    config.alpha_target = s.alpha_target;
    if (s.batch_sanitizer == "identity") {
      config.sanitizer = BatchSanitizerKind::kIdentity;
    } else if (s.batch_sanitizer != "histogram") {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown batch sanitizer '", s.batch_sanitizer, "'"));
    }
    return RunAgnosticBatch(cls, config, spec, rng);
  }
  if (s.mode == "agnostic-experts") {
    AgnosticConfig config;
    config.T = s.T;
    config.params = s.params;
    config.M = s.M;
    config.ope_noiseless = s.ope_noiseless;
    if (s.interval_sanitizer == "identity") {
      config.sanitizer = IntervalSanitizerKind::kIdentity;
    } else if (s.interval_sanitizer != "direct") {
      return absl::InvalidArgumentError(absl::StrCat(
          "unknown interval sanitizer '", s.interval_sanitizer, "'"));
    }
    return RunAgnostic(cls, config, spec, rng);
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown mode '", s.mode,
      "'; expected realizable, agnostic-batch or agnostic-experts"));
}

json Summary(const GameTranscript& t, const RegretReport& r) {
  const PrivacyParams p = t.ledger.Composed();
  return {{"seed", t.seed},
          {"mode", t.meta.count("mode") ? t.meta.at("mode") : ""},
          {"rounds", t.rounds.size()},
          {"mistakes", r.mistakes},
          {"best_in_hindsight", r.best_in_hindsight},
          {"regret", r.regret},
          {"ledger_epsilon", p.epsilon},
          {"ledger_delta", p.delta},
          {"halted_at", t.halted_at},
          {"truncated", t.truncated},
          {"degraded", t.degraded}};
}

absl::Status CmdRun(const Overrides& o) {
  ASSIGN_OR_RETURN(Settings s, Resolve(o));
  ASSIGN_OR_RETURN(ClassPtr cls, LoadClassPtr(s.class_spec));
  ASSIGN_OR_RETURN(AdversarySpec spec, MakeAdversarySpec(s));
  std::vector<GameTranscript> runs(s.seeds);
  RETURN_IF_ERROR(RunTrials(
      s.seeds, s.workers, Rng(s.seed), [&](int64_t i, Rng&) -> absl::Status {
        Rng rng(s.seed + static_cast<uint64_t>(i));
        ASSIGN_OR_RETURN(runs[i], RunOne(s, cls, spec, rng));
        return absl::OkStatus();
      }));

  json summaries = json::array();
  std::string csv =
      "seed,rounds,mistakes,best_in_hindsight,regret,ledger_epsilon,"
      "ledger_delta,halted_at,truncated\n";
  for (const GameTranscript& t : runs) {
    const RegretReport r = ComputeRegret(t, *cls);
    const PrivacyParams p = t.ledger.Composed();
    summaries.push_back(Summary(t, r));
    absl::StrAppend(&csv, t.seed, ",", t.rounds.size(), ",", r.mistakes, ",",
                    r.best_in_hindsight, ",", r.regret, ",", p.epsilon, ",",
                    p.delta, ",", t.halted_at, ",", t.truncated ? 1 : 0, "\n");
    if (!o.out.empty()) {
      const std::string dir =
          s.seeds == 1
              ? o.out
              : (std::filesystem::path(o.out) / absl::StrCat("seed_", t.seed))
                    .string();
      RETURN_IF_ERROR(ExportRun(dir, t, *cls));
    }
  }
  if (!o.out.empty()) {
    RETURN_IF_ERROR(WriteFile(
        (std::filesystem::path(o.out) / "summary.csv").string(), csv));
  }
  std::cout << (s.seeds == 1 ? summaries[0] : summaries).dump(1) << "\n";
  return absl::OkStatus();
}

absl::Status CmdDims(const std::string& spec) {
  ASSIGN_OR_RETURN(ConceptClass cls, LoadClass(spec));
  ASSIGN_OR_RETURN(ClassDims d, ComputeDims(cls));
  json j = {{"class", spec},
            {"points", cls.num_points()},
            {"concepts", cls.size()},
            {"ldim", d.ldim},
            {"dual_ldim", d.dual_ldim},
            {"vc", d.vc},
            {"dual_vc", d.dual_vc}};
  std::cout << j.dump(1) << "\n";
  return absl::OkStatus();
}

absl::Status CmdAudit(const Overrides& o) {
  ASSIGN_OR_RETURN(Settings s, Resolve(o));
  AuditScenarioOptions options;
  options.params = s.params;
  options.class_spec = s.class_spec;
  options.learner.T = s.T;
  options.learner.N0 = s.N0;
  options.learner.constant_scale = s.constant_scale;
  options.learner.beta = s.beta;
  ASSIGN_OR_RETURN(AuditScenario scenario,
                   MakeAuditScenario(s.audit_mechanism, options));
  AuditConfig config;
  config.trials = s.audit_trials;
  config.confidence = s.audit_confidence;
  config.budget = scenario.budget;
  config.workers = s.workers;
  ASSIGN_OR_RETURN(
      AuditReport report,
      PrivacyAudit(scenario.pairs, scenario.events, config, Rng(s.seed)));
  report.family = scenario.family;
  const std::string text = AuditToJson(report);
  if (!o.out.empty()) RETURN_IF_ERROR(WriteFile(o.out, text));
  std::cout << text;
  return absl::OkStatus();
}

absl::Status CmdSanitize(const Overrides& o, const std::string& data_path,
                         const std::string& mode, double alpha) {
  ASSIGN_OR_RETURN(Settings s, Resolve(o));
  ASSIGN_OR_RETURN(ConceptClass cls, LoadClass(s.class_spec));
  ASSIGN_OR_RETURN(std::string text, ReadFile(data_path));
  ASSIGN_OR_RETURN(Dataset data, ParseDatasetJson(text, cls.num_points()));
  Rng rng(s.seed);
  json out = {{"mode", mode}};
  if (mode == "finite" || mode == "labeled") {
    FiniteSanitizerResult result;
    SyntheticDataset synthetic;
    if (mode == "finite") {
      ASSIGN_OR_RETURN(result,
                       SanitizeFinite(data.points, cls, s.params, alpha, rng));
      ASSIGN_OR_RETURN(synthetic, Synthesize(result, cls));
      out["synthetic"] = synthetic.points;
    } else {
      if (!data.labeled) {
        return absl::InvalidArgumentError("labeled mode needs \"examples\"");
      }
      ASSIGN_OR_RETURN(
          result, SanitizeLabeled(data.examples, cls, s.params, alpha, rng));
      ASSIGN_OR_RETURN(synthetic, Synthesize(result, LabelClass(cls)));
      json ex = json::array();
      for (const LabeledExample& e : DecodeLabeled(synthetic.points)) {
        ex.push_back({e.point, e.label});
      }
      out["synthetic"] = ex;
    }
    out["alpha"] = synthetic.alpha;
    out["estimates"] = result.output.est;
    out["noisy_counts"] = result.noisy_counts;
  } else if (mode == "realizable-direct" || mode == "realizable-fooling") {
    RealizableSanitizerConfig config;
    config.mode = mode == "realizable-direct" ? RealizableMode::kDirect
                                              : RealizableMode::kFooling;
    config.alpha = alpha;
    config.beta = s.beta;
    ASSIGN_OR_RETURN(
        RealizableSanitizerResult result,
        RealizableSanitize(data.points, cls, s.params, config, rng));
    out["alpha"] = result.output.alpha;
    out["estimates"] = result.output.est;
    out["rounds"] = result.rounds;
    const PrivacyParams p = result.ledger.Composed();
    out["ledger"] = {{"epsilon", p.epsilon}, {"delta", p.delta}};
  } else {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown sanitize mode '", mode,
                     "'; expected finite, labeled, realizable-direct or "
                     "realizable-fooling"));
  }
  const std::string dump = out.dump(1) + "\n";
  if (!o.out.empty()) RETURN_IF_ERROR(WriteFile(o.out, dump));
  std::cout << dump;
  return absl::OkStatus();
}

absl::Status CmdExperts(const Overrides& o) {
  ASSIGN_OR_RETURN(Settings s, Resolve(o));
  ASSIGN_OR_RETURN(ClassPtr cls, LoadClassPtr(s.class_spec));
  Soa soa(cls);
  const int M = s.M >= 0 ? s.M : soa.oracle().Ldim(cls->FullMask());
  Rng rng(s.seed);
  Rng stream_rng = rng.Fork(0);
  std::vector<int> xs(s.T);
  for (int& x : xs)
    x = static_cast<int>(stream_rng.UniformInt(cls->num_points()));

  SequenceSanitizer inner = IdentitySequenceSanitizer();
  if (s.interval_sanitizer == "direct") {
    ASSIGN_OR_RETURN(DyadicIndex index, DyadicIndex::Build(s.T));
    const double c = static_cast<double>(index.MaxCoverage());
    inner = DirectSequenceSanitizer(cls->num_points(),
                                    {s.params.epsilon / c, s.params.delta / c});
  } else if (s.interval_sanitizer != "identity") {
    return absl::InvalidArgumentError(absl::StrCat(
        "unknown interval sanitizer '", s.interval_sanitizer, "'"));
  }
  ASSIGN_OR_RETURN(IntervalSanitizer sanitizer,
                   IntervalSanitizer::Create(s.T, s.params, std::move(inner)));
  Rng build_rng = rng.Fork(1);
  ASSIGN_OR_RETURN(ExpertStreams streams,
                   ConstructExperts(soa, xs, M, sanitizer, build_rng));
  const ExpertAudit audit = AuditExperts(streams, *cls, xs);
  if (!o.out.empty()) {
    std::filesystem::create_directories(o.out);
    RETURN_IF_ERROR(
        WriteFile((std::filesystem::path(o.out) / "expert_audit.csv").string(),
                  ExpertAuditCsv(streams, *cls, audit)));
  }
  json best = json::array();
  for (size_t c = 0; c < cls->size(); ++c) {
    best.push_back({{"concept", cls->concept_at(c).ToString()},
                    {"disagreements", audit.best[c]},
                    {"expert", streams.ids[audit.best_expert[c]].ToString()}});
  }
  json j = {{"T", s.T},
            {"M", M},
            {"experts", streams.ids.size()},
            {"sanitizer", s.interval_sanitizer},
            {"best", best}};
  std::cout << j.dump(1) << "\n";
  return absl::OkStatus();
}

absl::Status CmdBench(const Overrides& o) {
  ASSIGN_OR_RETURN(Settings s, Resolve(o));
  ASSIGN_OR_RETURN(ClassPtr cls, LoadClassPtr(s.class_spec));
  json results = json::array();
  auto time = [&](const std::string& name,
                  const std::function<absl::Status()>& fn) -> absl::Status {
    const auto start = std::chrono::steady_clock::now();
    RETURN_IF_ERROR(fn());
    const std::chrono::duration<double, std::milli> ms =
        std::chrono::steady_clock::now() - start;
    results.push_back({{"name", name}, {"ms", ms.count()}});
    return absl::OkStatus();
  };
  RETURN_IF_ERROR(time("dims", [&]() { return ComputeDims(*cls).status(); }));
  RETURN_IF_ERROR(time("realizable_run", [&]() {
    Settings r = s;
    r.mode = "realizable";
    r.adversary = "";
    ASSIGN_OR_RETURN(AdversarySpec spec, MakeAdversarySpec(r));
    Rng rng(s.seed);
    return RunOne(r, cls, spec, rng).status();
  }));
  RETURN_IF_ERROR(time("ope_noisy_1024x32", [&]() -> absl::Status {
    OpeConfig config;
    config.N = 32;
    config.T = 1024;
    config.params = s.params;
    ASSIGN_OR_RETURN(PrivateOpe ope, PrivateOpe::Create(config));
    Rng rng(s.seed);
    std::vector<double> loss(32);
    for (int t = 0; t < 1024; ++t) {
      for (double& l : loss) l = rng.Uniform();
      RETURN_IF_ERROR(ope.Step(loss, rng).status());
    }
    return absl::OkStatus();
  }));
  std::cout << results.dump(1) << "\n";
  return absl::OkStatus();
}

int Report(const absl::Status& status) {
  if (status.ok()) return 0;
  std::cerr << "dpol: " << status << "\n";
  return 1;
}

}  // namespace
}  // namespace dpol::tools

int main(int argc, char** argv) {
  using namespace dpol::tools;
  CLI::App app{"Private online learning simulator"};
  app.require_subcommand(1);

  std::string dims_class;
  CLI::App* dims = app.add_subcommand("dims", "Dimensions of a class");
  dims->add_option("class", dims_class, "class specification")->required();

  Overrides run_o;
  CLI::App* run = app.add_subcommand("run", "Play the online game");
  AddCommon(run, run_o);
  run->add_option("--mode", run_o.mode,
                  "realizable | agnostic-batch | agnostic-experts");
  run->add_option("-T,--horizon", run_o.T, "number of rounds");
  run->add_option("--seeds", run_o.seeds, "number of consecutive seeds");
  run->add_option("--N0", run_o.N0, "layer-0 sequences (realizable)");
  run->add_option("--constant-scale", run_o.constant_scale,
                  "scale of the realizable constants");
  run->add_flag("--faithful", run_o.faithful, "use the theory constants");
  run->add_option("--beta", run_o.beta, "failure probability");
  run->add_option("--B", run_o.B, "batch size (agnostic-batch)");
  run->add_option("--batch-sanitizer", run_o.batch_sanitizer,
                  "histogram | identity");
  run->add_option("--alpha-target", run_o.alpha_target,
                  "largest accepted sanitizer error");
  run->add_option("--M", run_o.M, "switches per expert (agnostic-experts)");
  run->add_option("--interval-sanitizer", run_o.interval_sanitizer,
                  "direct | identity");
  run->add_flag("--ope-noiseless", run_o.ope_noiseless,
                "exact multiplicative weights (not private)");
  run->add_option("--adversary", run_o.adversary,
                  "realizable-adaptive | agnostic-noise | adaptive-agnostic");
  run->add_option("--noise-rate", run_o.noise_rate, "label flip rate");
  run->add_option("--flip-budget", run_o.flip_budget,
                  "adaptive-agnostic flips");
  run->add_option("--target", run_o.target, "index of the labeling concept");

  Overrides audit_o;
  CLI::App* audit = app.add_subcommand("audit", "Empirical privacy audit");
  AddCommon(audit, audit_o);
  audit->add_option("--mechanism", audit_o.mechanism,
                    "randomized-response | laplace | svt | histogram | "
                    "exponential | realizable | no-noise");
  audit->add_option("--trials", audit_o.trials, "runs per neighbor");
  audit->add_option("--confidence", audit_o.confidence, "family confidence");
  audit->add_option("-T,--horizon", audit_o.T, "learner rounds");
  audit->add_option("--N0", audit_o.N0, "learner layer-0 sequences");
  audit->add_option("--constant-scale", audit_o.constant_scale,
                    "learner constant scale");

  Overrides san_o;
  std::string data_path, san_mode = "finite";
  double alpha = 1.0;
  CLI::App* sanitize = app.add_subcommand("sanitize", "Sanitize a dataset");
  AddCommon(sanitize, san_o);
  sanitize->add_option("--data", data_path, "dataset JSON")->required();
  sanitize->add_option("--mode", san_mode,
                       "finite | labeled | realizable-direct | "
                       "realizable-fooling");
  sanitize->add_option("--alpha", alpha, "target error");
  sanitize->add_option("--beta", san_o.beta, "failure probability");

  Overrides exp_o;
  CLI::App* experts = app.add_subcommand("experts", "Expert coverage audit");
  AddCommon(experts, exp_o);
  experts->add_option("-T,--horizon", exp_o.T, "number of rounds");
  experts->add_option("--M", exp_o.M, "switches per expert");
  experts->add_option("--interval-sanitizer", exp_o.interval_sanitizer,
                      "direct | identity");

  Overrides bench_o;
  CLI::App* bench = app.add_subcommand("bench", "Quick timings");
  AddCommon(bench, bench_o);
  bench->add_option("-T,--horizon", bench_o.T, "rounds of the timed run");

  CLI11_PARSE(app, argc, argv);
  if (dims->parsed()) return Report(CmdDims(dims_class));
  if (run->parsed()) return Report(CmdRun(run_o));
  if (audit->parsed()) return Report(CmdAudit(audit_o));
  if (sanitize->parsed()) {
    return Report(CmdSanitize(san_o, data_path, san_mode, alpha));
  }
  if (experts->parsed()) return Report(CmdExperts(exp_o));
  if (bench->parsed()) return Report(CmdBench(bench_o));
  return 0;
}
