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

#include <algorithm>
#include <cmath>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "dpol/adversary.h"
#include "dpol/agnostic_pipeline.h"
#include "dpol/batch_learner.h"
#include "dpol/class_io.h"
#include "dpol/experts.h"
#include "dpol/game.h"
#include "dpol/hedge.h"
#include "dpol/interval_sanitizer.h"
#include "dpol/learner.h"
#include "dpol/private_ope.h"
#include "dpol/rng.h"
#include "dpol/soa.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace dpol {
namespace {

ClassPtr Builtin(const std::string& spec) {
  return std::make_shared<const ConceptClass>(*LoadClass(spec));
}

TEST(HedgeTest, DefaultEta) {
  EXPECT_DOUBLE_EQ(DefaultHedgeEta(100, 4), std::sqrt(8 * std::log(4.0) / 100));
  EXPECT_EQ(DefaultHedgeEta(0, 4), 0.0);
  EXPECT_EQ(DefaultHedgeEta(100, 1), 0.0);
}

TEST(HedgeTest, SingleConceptIsAlwaysPlayed) {
  ClassPtr cls =
      std::make_shared<const ConceptClass>(*ConceptClass::FromRows({{1, 0}}));
  HedgeLearner hedge(cls, 0.5);
  Rng rng(51);
  for (int t = 0; t < 20; ++t) {
    EXPECT_EQ(hedge.Predict(rng)->ToString(), "10");
    ASSERT_TRUE(hedge.Observe({t % 2, 1}, rng).ok());
  }
  EXPECT_EQ(hedge.Probabilities(), std::vector<double>{1.0});
}

TEST(HedgeTest, TiedConceptsAreEquallyLikely) {
  ClassPtr cls = Builtin("point:2");
  HedgeLearner hedge(cls, 1.0);
  Rng rng(52);
  ASSERT_TRUE(hedge.Observe({0, 1}, rng).ok());
  ASSERT_TRUE(hedge.Observe({0, 0}, rng).ok());
  EXPECT_EQ(hedge.mistakes()[0], hedge.mistakes()[1]);
  const auto p = hedge.Probabilities();
  EXPECT_DOUBLE_EQ(p[0], 0.5);
  int first = 0;
  for (int i = 0; i < 20000; ++i) {
    hedge.Predict(rng).IgnoreError();
    first += hedge.last_index() == 0;
  }
  EXPECT_NEAR(first / 20000.0, 0.5, 0.02);
}

TEST(HedgeTest, ProbabilitiesFollowExponentialWeights) {
  ClassPtr cls = Builtin("thresh:4");
  HedgeLearner hedge(cls, 0.3);
  Rng rng(53);
  for (int t = 0; t < 30; ++t) {
    ASSERT_TRUE(hedge
                    .Observe({static_cast<int>(rng.UniformInt(4)),
                              static_cast<int>(rng.UniformInt(2))},
                             rng)
                    .ok());
  }
  const auto p = hedge.Probabilities();
  double z = 0;
  for (int64_t m : hedge.mistakes()) z += std::exp(-0.3 * m);
  for (size_t i = 0; i < p.size(); ++i) {
    EXPECT_NEAR(p[i], std::exp(-0.3 * hedge.mistakes()[i]) / z, 1e-12);
  }
}

TEST(HedgeTest, ExpectedRegretWithinBound) {
  ClassPtr cls = Builtin("thresh:15");
  Rng rng(54);
  const int64_t T = 2000;
  for (int trial = 0; trial < 10; ++trial) {
    HedgeLearner hedge(cls, DefaultHedgeEta(T, cls->size()));
    double expected = 0;
    const size_t target = rng.UniformInt(cls->size());
    for (int64_t t = 0; t < T; ++t) {
      const int x = static_cast<int>(rng.UniformInt(cls->num_points()));
      const int y = rng.Bernoulli(0.2) ? 1 - cls->concept_at(target)(x)
                                       : cls->concept_at(target)(x);
      const auto p = hedge.Probabilities();
      for (size_t i = 0; i < p.size(); ++i) {
        expected += p[i] * (cls->concept_at(i)(x) != y);
      }
      ASSERT_TRUE(hedge.Observe({x, y}, rng).ok());
    }
    const int64_t best =
        *std::min_element(hedge.mistakes().begin(), hedge.mistakes().end());
    EXPECT_LE(
        expected - best,
        std::sqrt(T * std::log(static_cast<double>(cls->size())) / 2) + 1e-9);
  }
}

LearnerFactory HedgeFactory(ClassPtr cls, double eta) {
  return [cls, eta]() -> std::unique_ptr<OnlineLearner> {
    return std::make_unique<HedgeLearner>(cls, eta);
  };
}

TEST(BatchLearnerTest, ValidatesBatchSize) {
  ClassPtr cls = Builtin("point:3");
  BatchConfig config;
  config.T = 10;
  config.B = -1;
  EXPECT_FALSE(BatchLearner::Create(config, IdentityBatchSanitizer(),
                                    HedgeFactory(cls, 0.5))
                   .ok());
  config.B = 0;
  auto ok = BatchLearner::Create(config, IdentityBatchSanitizer(),
                                 HedgeFactory(cls, 0.5));
  ASSERT_TRUE(ok.ok());
  EXPECT_EQ((*ok)->B(), DefaultBatchSize(10));
  EXPECT_EQ(DefaultBatchSize(10), 4);
  EXPECT_EQ(DefaultBatchSize(16), 4);
}

TEST(BatchLearnerTest, BatchOfOneFeedsEveryExampleToOneLearner) {
  ClassPtr cls = Builtin("thresh:4");
  BatchConfig config;
  config.T = 50;
  config.B = 1;
  auto learner = *BatchLearner::Create(config, IdentityBatchSanitizer(),
                                       HedgeFactory(cls, 0.5));
  Rng rng(55);
  std::vector<LabeledExample> stream;
  for (int t = 0; t < 50; ++t) {
    ASSERT_TRUE(learner->Predict(rng).ok());
    EXPECT_EQ(learner->last_choice(), 0u);
    stream.push_back({static_cast<int>(rng.UniformInt(4)), t % 2});
    ASSERT_TRUE(learner->Observe(stream.back(), rng).ok());
  }
  EXPECT_EQ(learner->subsequence(0), stream);
  EXPECT_EQ(learner->batch_index(), 50);
  EXPECT_TRUE(learner->ledger().empty());
}

TEST(BatchLearnerTest, FullBatchGivesEachLearnerOneExample) {
  ClassPtr cls = Builtin("thresh:4");
  BatchConfig config;
  config.T = 12;
  config.B = 12;
  config.sanitizer_params = PrivacyParams{1.0, 1e-6};
  auto learner = *BatchLearner::Create(config, IdentityBatchSanitizer(),
                                       HedgeFactory(cls, 0.5));
  Rng rng(56);
  std::multiset<std::pair<int, int>> sent, received;
  for (int t = 0; t < 12; ++t) {
    ASSERT_TRUE(learner->Predict(rng).ok());
    const LabeledExample e{t % 4, t % 3 == 0};
    sent.insert({e.point, e.label});
    ASSERT_TRUE(learner->Observe(e, rng).ok());
  }
  EXPECT_EQ(learner->batch_index(), 1);
  for (size_t i = 0; i < 12; ++i) {
    ASSERT_EQ(learner->subsequence(i).size(), 1u);
    received.insert(
        {learner->subsequence(i)[0].point, learner->subsequence(i)[0].label});
  }
  EXPECT_EQ(sent, received);
  EXPECT_EQ(learner->ledger().Composed(), (PrivacyParams{1.0, 1e-6}));
}

TEST(BatchLearnerTest, SanitizerFailureHaltsWithLastOutput) {
  ClassPtr cls = Builtin("thresh:8");
  BatchConfig config;
  config.T = 64;
  config.B = 4;
  auto learner =
      *BatchLearner::Create(config, HistogramBatchSanitizer(*cls, {1.0, 1e-6}),
                            HedgeFactory(cls, 0.5));
  Rng rng(57);
  Hypothesis last;
  for (int t = 0; t < 64 && !learner->halted(); ++t) {
    last = *learner->Predict(rng);
    ASSERT_TRUE(learner->Observe({t % 8, 1}, rng).ok());
  }
  ASSERT_TRUE(learner->halted());
  EXPECT_FALSE(learner->failure().ok());
  EXPECT_EQ(*learner->Predict(rng), last);
}

TEST(ExpertCountTest, SmallValues) {
  EXPECT_EQ(CountExperts(64, 0), 1u);
  EXPECT_EQ(CountExperts(3, 1), 6u);
  EXPECT_EQ(CountExperts(64, 1), 2080u);
  for (int64_t T = 1; T <= 9; ++T) {
    for (int M = 0; M <= 2; ++M) {
      auto ids = EnumerateExperts(T, M);
      ASSERT_TRUE(ids.ok());
      EXPECT_EQ(ids->size(), CountExperts(T, M)) << T << " " << M;
      for (size_t e = 0; e < ids->size(); ++e) {
        EXPECT_TRUE(ValidateExpertId((*ids)[e], T).ok());
        if (e > 0) EXPECT_FALSE((*ids)[e] == (*ids)[e - 1]);
      }
    }
  }
}

TEST(ExpertCountTest, RejectsInvalidIdsAndCaps) {
  EXPECT_FALSE(ValidateExpertId({{2}, {3}}, 5).ok());
  EXPECT_FALSE(ValidateExpertId({{3, 3}, {1, 2}}, 5).ok());
  EXPECT_FALSE(ValidateExpertId({{6}, {1}}, 5).ok());
  EXPECT_FALSE(ValidateExpertId({{2}, {0}}, 5).ok());
  EXPECT_TRUE(ValidateExpertId({{2, 4}, {1, 3}}, 5).ok());
  EXPECT_EQ(ExpertId({{2, 4}, {1, 3}}).ToString(), "i=(2,4) j=(1,3)");
  ExpertCaps caps;
  caps.max_experts = 100;
  EXPECT_EQ(EnumerateExperts(64, 1, caps).status().code(),
            absl::StatusCode::kResourceExhausted);
  EXPECT_FALSE(EnumerateExperts(8, 3).ok());
}

SyntheticSequence Slice(const std::vector<int>& xs, int64_t l, int64_t r) {
  SyntheticSequence out;
  for (int64_t k = l; k <= r; ++k) out.push_back(xs[k - 1]);
  return out;
}

TEST(ExpertTest, ChangesOnlyAfterSwitchRounds) {
  ClassPtr cls = Builtin("point:4");
  Soa soa(cls);
  const std::vector<int> xs = {2, 1, 3, 0, 2, 1};
  Expert expert(&soa, {{3, 5}, {2, 4}});
  Hypothesis prev = *soa.Predict(soa.Initial());
  int64_t last_switch = 0;
  for (int64_t t = 1; t <= 6; ++t) {
    std::optional<SyntheticSequence> feed;
    if (t == 3 || t == 5) feed = Slice(xs, last_switch + 1, t);
    auto h = expert.Step(t, feed);
    ASSERT_TRUE(h.ok());
    if (t != 4 && t != 6) {
      EXPECT_EQ(*h, prev) << t;
    }
    prev = *h;
    if (feed) last_switch = t;
  }
  // x_2 = 1 is fed with the label the SOA got wrong. Forcing a second
  // mistake on x_4 leaves no consistent point concept, so it is skipped.
  ASSERT_EQ(expert.fed().size(), 1u);
  EXPECT_EQ(expert.fed()[0], (LabeledExample{1, 1}));
  EXPECT_EQ(expert.switches_done(), 2);
}

TEST(ExpertTest, RejectsMisplacedFeeds) {
  ClassPtr cls = Builtin("point:4");
  Soa soa(cls);
  Expert a(&soa, {{2}, {1}});
  EXPECT_FALSE(a.Step(1, SyntheticSequence{0}).ok());
  Expert b(&soa, {{2}, {1}});
  ASSERT_TRUE(b.Step(1, std::nullopt).ok());
  EXPECT_FALSE(b.Step(2, std::nullopt).ok());
  Expert c(&soa, {{2}, {1}});
  EXPECT_FALSE(c.Step(2, std::nullopt).ok());
}

TEST(ExpertTest, EmptyFeedSlotKeepsState) {
  ClassPtr cls = Builtin("point:4");
  Soa soa(cls);
  Expert e(&soa, {{2}, {1}});
  const Hypothesis h1 = *e.Step(1, std::nullopt);
  ASSERT_TRUE(e.Step(2, SyntheticSequence{std::nullopt, 3}).ok());
  EXPECT_EQ(*e.Step(3, std::nullopt), h1);
  EXPECT_TRUE(e.fed().empty());
}

TEST(ExpertPoolTest, MatchesIndependentExperts) {
  for (const std::string spec : {"point:4", "thresh:4"}) {
    ClassPtr cls = Builtin(spec);
    Soa soa(cls);
    Rng rng(58);
    const int64_t T = 12;
    std::vector<int> xs(T);
    for (int& x : xs) x = static_cast<int>(rng.UniformInt(cls->num_points()));
    for (int M = 0; M <= 2; ++M) {
      auto pool = ExpertPool::Create(&soa, T, M);
      ASSERT_TRUE(pool.ok());
      std::vector<Expert> experts;
      for (const ExpertId& id : pool->ids()) experts.emplace_back(&soa, id);
      ReleaseQuery query =
          [&xs](int64_t l, int64_t r) -> absl::StatusOr<SyntheticSequence> {
        return Slice(xs, l, r);
      };
      for (int64_t t = 1; t <= T; ++t) {
        auto got = pool->Round(t, query);
        ASSERT_TRUE(got.ok());
        for (size_t e = 0; e < experts.size(); ++e) {
          const ExpertId& id = experts[e].id();
          std::optional<SyntheticSequence> feed;
          for (int k = 0; k < id.M(); ++k) {
            if (id.switches[k] == t) {
              feed = Slice(xs, k == 0 ? 1 : id.switches[k - 1] + 1, t);
            }
          }
          auto want = experts[e].Step(t, feed);
          ASSERT_TRUE(want.ok());
          EXPECT_EQ(pool->hypotheses()[(*got)[e]], *want)
              << spec << " " << id.ToString() << " t=" << t;
        }
      }
      EXPECT_LE(pool->num_states(), pool->size() * (M + 1));
    }
  }
}

TEST(ConstructExpertsTest, AuditCountsDisagreements) {
  ClassPtr cls = Builtin("point:4");
  Soa soa(cls);
  Rng rng(59);
  const int64_t T = 16;
  std::vector<int> xs(T);
  for (int& x : xs) x = static_cast<int>(rng.UniformInt(4));
  auto sanitizer =
      *IntervalSanitizer::Create(T, {1.0, 1e-6}, IdentitySequenceSanitizer());
  auto streams = ConstructExperts(soa, xs, 1, sanitizer, rng);
  ASSERT_TRUE(streams.ok());
  EXPECT_EQ(streams->ids.size(), CountExperts(T, 1));
  const ExpertAudit audit = AuditExperts(*streams, *cls, xs);
  for (size_t c = 0; c < cls->size(); ++c) {
    int64_t best = T + 1;
    for (size_t e = 0; e < streams->ids.size(); ++e) {
      int64_t dis = 0;
      for (int64_t t = 0; t < T; ++t) {
        const Hypothesis& h = streams->hypotheses[streams->streams[e][t]];
        dis += h(xs[t]) != cls->concept_at(c)(xs[t]);
      }
      EXPECT_EQ(audit.disagreements[e][c], dis);
      best = std::min(best, dis);
    }
    EXPECT_EQ(audit.best[c], best);
    EXPECT_EQ(audit.disagreements[audit.best_expert[c]][c], best);
  }
  const std::string csv = ExpertAuditCsv(*streams, *cls, audit);
  EXPECT_EQ(csv.rfind("expert,switches,feeds,concept,disagreements\n", 0), 0u);
  // A second construction over the same sanitizer is refused.
  EXPECT_FALSE(ConstructExperts(soa, xs, 1, sanitizer, rng).ok());
}

TEST(PrivateOpeTest, SingleExpertAndUniformStart) {
  OpeConfig config;
  config.N = 1;
  config.T = 8;
  auto one = PrivateOpe::Create(config);
  ASSERT_TRUE(one.ok());
  Rng rng(60);
  for (int t = 0; t < 8; ++t) EXPECT_EQ(*one->Step({1.0}, rng), 0u);

  config.N = 4;
  config.noiseless = true;
  auto ope = *PrivateOpe::Create(config);
  for (int t = 0; t < 5; ++t) {
    for (double p : ope.Probabilities()) EXPECT_DOUBLE_EQ(p, 0.25);
    ASSERT_TRUE(ope.Observe({0, 0, 0, 0}, rng).ok());
  }
  EXPECT_TRUE(ope.ledger().empty());
}

TEST(PrivateOpeTest, ValidatesLosses) {
  OpeConfig config;
  config.N = 2;
  config.T = 2;
  auto ope = *PrivateOpe::Create(config);
  Rng rng(61);
  EXPECT_FALSE(ope.Observe({0.5}, rng).ok());
  EXPECT_FALSE(ope.Observe({0.5, 1.5}, rng).ok());
  ASSERT_TRUE(ope.Observe({0.5, 0.5}, rng).ok());
  ASSERT_TRUE(ope.Observe({0.5, 0.5}, rng).ok());
  EXPECT_FALSE(ope.Observe({0.5, 0.5}, rng).ok());
}

TEST(PrivateOpeTest, NoiselessMatchesExactWeights) {
  const std::vector<std::vector<double>> losses = {
      {1, 0, 0.5}, {0, 1, 0.5}, {1, 1, 0}, {0.25, 0, 1}};
  OpeConfig config;
  config.N = 3;
  config.T = 4;
  config.noiseless = true;
  config.eta = 0.7;
  auto ope = *PrivateOpe::Create(config);
  const auto exact = ExactMwProbabilities(losses, 0.7);
  Rng rng(62);
  for (size_t t = 0; t < losses.size(); ++t) {
    const auto p = ope.Probabilities();
    for (size_t i = 0; i < 3; ++i) EXPECT_NEAR(p[i], exact[t][i], 1e-12);
    ASSERT_TRUE(ope.Observe(losses[t], rng).ok());
  }
}

TEST(PrivateOpeTest, LedgerAndLargeEpsilonRegret) {
  OpeConfig config;
  config.N = 5;
  config.T = 256;
  config.params = {1e3, 1e-6};
  auto ope = *PrivateOpe::Create(config);
  EXPECT_NEAR(ope.ledger().Composed().epsilon, 1e3, 1e-9 * 1e3);
  EXPECT_LE(ope.ledger().Composed().delta, 1e-6 * (1 + 1e-12));
  Rng rng(63);
  std::vector<double> cumulative(5, 0);
  double expected = 0;
  for (int64_t t = 0; t < config.T; ++t) {
    std::vector<double> loss(5);
    for (size_t i = 0; i < 5; ++i) loss[i] = i == 2 ? 0.1 : rng.Uniform();
    const auto p = ope.Probabilities();
    for (size_t i = 0; i < 5; ++i) {
      expected += p[i] * loss[i];
      cumulative[i] += loss[i];
    }
    ASSERT_TRUE(ope.Observe(loss, rng).ok());
  }
  const double best = *std::min_element(cumulative.begin(), cumulative.end());
  EXPECT_LE(expected - best, 2 * std::sqrt(config.T * std::log(5.0)));
}

TEST(RunAgnosticTest, EmptyHorizonAndLedger) {
  ClassPtr cls = Builtin("point:8");
  AgnosticConfig config;
  config.T = 0;
  Rng rng(64);
  AdversarySpec spec;
  spec.kind = AdversaryKind::kAgnosticNoise;
  auto empty = RunAgnostic(cls, config, spec, rng);
  ASSERT_TRUE(empty.ok());
  EXPECT_TRUE(empty->rounds.empty());

  config.T = 32;
  config.sanitizer = IntervalSanitizerKind::kIdentity;
  config.ope_noiseless = true;
  auto quiet = RunAgnostic(cls, config, spec, rng);
  ASSERT_TRUE(quiet.ok());
  EXPECT_EQ(quiet->rounds.size(), 32u);
  EXPECT_NEAR(quiet->ledger.Composed().epsilon, 1.0, 1e-12);
  EXPECT_EQ(quiet->meta.at("mode"), "agnostic-experts");

  config.sanitizer = IntervalSanitizerKind::kDirect;
  config.ope_noiseless = false;
  auto loud = RunAgnostic(cls, config, spec, rng);
  ASSERT_TRUE(loud.ok());
  EXPECT_NEAR(loud->ledger.Composed().epsilon, 2.0, 1e-12);
  EXPECT_NEAR(loud->ledger.Composed().delta, 2e-6, 1e-18);
}

TEST(RunAgnosticTest, ReplayIsDeterministic) {
  ClassPtr cls = Builtin("point:8");
  AgnosticConfig config;
  config.T = 32;
  AdversarySpec spec;
  spec.kind = AdversaryKind::kAgnosticNoise;
  spec.noise_rate = 0.1;
  Rng a(65), b(65);
  auto ta = RunAgnostic(cls, config, spec, a);
  auto tb = RunAgnostic(cls, config, spec, b);
  ASSERT_TRUE(ta.ok());
  ASSERT_TRUE(tb.ok());
  EXPECT_TRUE(*ta == *tb);
}

TEST(RunAgnosticBatchTest, IdentitySanitizerRunsFullHorizon) {
  ClassPtr cls = Builtin("thresh:3");
  AgnosticBatchConfig config;
  config.T = 256;
  config.sanitizer = BatchSanitizerKind::kIdentity;
  AdversarySpec spec;
  spec.kind = AdversaryKind::kAgnosticNoise;
  spec.noise_rate = 0.1;
  Rng rng(66);
  auto t = RunAgnosticBatch(cls, config, spec, rng);
  ASSERT_TRUE(t.ok());
  EXPECT_EQ(t->rounds.size(), 256u);
  EXPECT_EQ(t->meta.at("B"), "16");
  EXPECT_TRUE(MistakesConsistent(*t));
}

TEST(RunAgnosticBatchTest, HistogramLedgerIsSanitizerBudget) {
  ClassPtr cls = Builtin("point:2");
  AgnosticBatchConfig config;
  config.T = 4096;
  config.B = 2048;
  config.params = {4.0, 1e-6};
  AdversarySpec spec;
  spec.kind = AdversaryKind::kAgnosticNoise;
  Rng rng(67);
  auto t = RunAgnosticBatch(cls, config, spec, rng);
  ASSERT_TRUE(t.ok());
  EXPECT_EQ(t->ledger.Composed(), (PrivacyParams{4.0, 1e-6}));
  EXPECT_EQ(t->meta.count("failure"), 0u);
  EXPECT_EQ(t->rounds.size(), 4096u);
}

}  // namespace
}  // namespace dpol
