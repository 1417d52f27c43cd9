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
#include <optional>
#include <vector>

#include "dpol/agnostic_learner.h"
#include "dpol/class_io.h"
#include "dpol/compose.h"
#include "dpol/discriminator.h"
#include "dpol/interval_sanitizer.h"
#include "dpol/realizable_sanitizer.h"
#include "dpol/rng.h"
#include "dpol/sanitizer.h"
#include "gtest/gtest.h"

namespace dpol {
namespace {

std::vector<int> RandomPoints(size_t n, size_t domain, Rng& rng) {
  std::vector<int> out(n);
  for (int& x : out) x = static_cast<int>(rng.UniformInt(domain));
  return out;
}

TEST(EmpiricalMassTest, CountsPositivePoints) {
  ConceptClass cls = *LoadClass("thresh:4");
  const std::vector<int> points = {0, 1, 1, 3};
  const std::vector<double> mass = EmpiricalMass(cls, points);
  ASSERT_EQ(mass.size(), cls.size());
  for (size_t i = 0; i < cls.size(); ++i) {
    int c = 0;
    for (int x : points) c += cls.concept_at(i)(x);
    EXPECT_DOUBLE_EQ(mass[i], c / 4.0);
  }
  SanitizerOutput exact{mass, 0, SanitizerKind::kFractional};
  EXPECT_EQ(SupError(exact, cls, points), 0.0);
}

TEST(SanitizeFiniteTest, SupErrorWithinReportedAlpha) {
  ConceptClass cls = *LoadClass("thresh:8");
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const std::vector<int> points =
        RandomPoints(4000 + rng.UniformInt(4000), cls.num_points(), rng);
    auto r = SanitizeFinite(points, cls, {1.0, 1e-6}, 1.0, rng);
    ASSERT_TRUE(r.ok()) << r.status();
    EXPECT_LE(SupError(r->output, cls, points), r->output.alpha + 1e-12);
    for (double e : r->output.est) {
      EXPECT_GE(e, 0.0);
      EXPECT_LE(e, 1.0);
    }
  }
}

TEST(SanitizeFiniteTest, FailsWithTooLittleData) {
  ConceptClass cls = *LoadClass("thresh:8");
  Rng rng(32);
  auto r = SanitizeFinite(std::vector<int>(10, 0), cls, {1.0, 1e-6}, 0.1, rng);
  EXPECT_EQ(r.status().code(), absl::StatusCode::kFailedPrecondition);
  EXPECT_FALSE(SanitizeFinite({}, cls, {1.0, 1e-6}, 1, rng).ok());
  EXPECT_FALSE(SanitizeFinite({9}, cls, {1.0, 1e-6}, 1, rng).ok());
}

TEST(SynthesizeTest, SizeAndAlpha) {
  ConceptClass cls = *LoadClass("point:6");
  Rng rng(33);
  for (int trial = 0; trial < 100; ++trial) {
    const std::vector<int> points = RandomPoints(3000, cls.num_points(), rng);
    auto r = *SanitizeFinite(points, cls, {1.0, 1e-6}, 1.0, rng);
    auto syn = Synthesize(r, cls);
    ASSERT_TRUE(syn.ok());
    EXPECT_EQ(syn->points.size(), points.size());
    EXPECT_GE(syn->alpha, r.output.alpha);
    const std::vector<double> mass = EmpiricalMass(cls, syn->points);
    for (size_t i = 0; i < mass.size(); ++i) {
      EXPECT_LE(std::fabs(mass[i] - r.output.est[i]), syn->alpha + 1e-12);
    }
  }
}

TEST(SanitizeLabeledTest, DecodesBackToExamples) {
  ConceptClass cls = *LoadClass("thresh:4");
  Rng rng(34);
  std::vector<LabeledExample> data;
  for (int i = 0; i < 5000; ++i) {
    const int x = static_cast<int>(rng.UniformInt(4));
    data.push_back({x, x >= 2 ? 1 : 0});
  }
  auto r = SanitizeLabeled(data, cls, {1.0, 1e-6}, 1.0, rng);
  ASSERT_TRUE(r.ok());
  auto syn = *Synthesize(*r, LabelClass(cls));
  for (const LabeledExample& e : DecodeLabeled(syn.points)) {
    EXPECT_EQ(e.label, e.point >= 2 ? 1 : 0);
  }
  EXPECT_FALSE(SanitizeLabeled({{0, 2}}, cls, {1.0, 1e-6}, 1.0, rng).ok());
  const std::vector<int> lifted = {static_cast<int>(LabeledPointIndex(3, 1))};
  EXPECT_EQ(DecodeLabeled(lifted).front(), (LabeledExample{3, 1}));
}

TEST(DatasetJsonTest, RoundTripAndErrors) {
  Dataset d;
  d.points = {0, 2, 2};
  d.alpha = 0.25;
  auto back = ParseDatasetJson(DatasetToJson(d), 3);
  ASSERT_TRUE(back.ok());
  EXPECT_EQ(back->points, d.points);
  EXPECT_EQ(back->alpha, d.alpha);
  Dataset l;
  l.labeled = true;
  l.examples = {{0, 1}, {2, 0}};
  auto lb = ParseDatasetJson(DatasetToJson(l), 3);
  ASSERT_TRUE(lb.ok());
  EXPECT_TRUE(lb->labeled);
  EXPECT_EQ(lb->examples, l.examples);
  EXPECT_FALSE(ParseDatasetJson("[1]", 3).ok());
  EXPECT_FALSE(ParseDatasetJson(R"({"points": [5]})", 3).ok());
  EXPECT_FALSE(ParseDatasetJson(R"({"examples": [[0, 3]]})", 3).ok());
  EXPECT_FALSE(ParseDatasetJson(R"({"other": 1})", 3).ok());
}

TEST(RealizableSanitizerTest, DirectModeContract) {
  Rng rng(35);
  for (const std::string spec : {"point:8", "thresh:8", "cube:3"}) {
    ConceptClass cls = *LoadClass(spec);
    for (int trial = 0; trial < 200; ++trial) {
      // Skewed supports leave some concepts with zero mass.
      const size_t support = 1 + rng.UniformInt(cls.num_points());
      const std::vector<int> points =
          RandomPoints(2000 + rng.UniformInt(3000), support, rng);
      RealizableSanitizerConfig config;
      config.alpha = 0.2;
      auto r = RealizableSanitize(points, cls, {1.0, 1e-6}, config, rng);
      ASSERT_TRUE(r.ok());
      EXPECT_EQ(r->output.kind, SanitizerKind::kRealizableBinary);
      const std::vector<double> mass = EmpiricalMass(cls, points);
      for (size_t i = 0; i < cls.size(); ++i) {
        if (mass[i] == 0) EXPECT_EQ(r->output.est[i], 0.0);
        if (mass[i] >= r->output.alpha) EXPECT_EQ(r->output.est[i], 1.0);
      }
      EXPECT_NEAR(r->ledger.Composed().epsilon, 1.0, 1e-12);
    }
  }
}

TEST(RealizableSanitizerTest, FoolingModeWinsAndMeetsContract) {
  ConceptClass cls = *LoadClass("point:3");
  Rng rng(36);
  RealizableSanitizerConfig config;
  config.mode = RealizableMode::kFooling;
  config.alpha = 0.5;
  config.m = 2;
  int wins = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::vector<int> points = RandomPoints(8000, 2, rng);
    auto r = RealizableSanitize(points, cls, {1.0, 1e-3}, config, rng);
    if (!r.ok()) continue;
    ++wins;
    EXPECT_LE(r->rounds, r->max_rounds);
    const std::vector<double> mass = EmpiricalMass(cls, points);
    for (size_t i = 0; i < cls.size(); ++i) {
      if (mass[i] == 0) EXPECT_EQ(r->output.est[i], 0.0);
      if (mass[i] >= config.alpha) EXPECT_EQ(r->output.est[i], 1.0);
    }
    const PrivacyParams total = r->ledger.Composed();
    EXPECT_LE(total.epsilon, 1.0 + 1e-9);
    EXPECT_LE(total.delta, 1e-3 * (1 + 1e-12));
  }
  EXPECT_GE(wins, 18);
}

TEST(RealizableSanitizerTest,
     FoolingLedgerReportsTrueCompositionAtLargeEpsilon) {
  ConceptClass cls = *LoadClass("point:3");
  Rng rng(45);
  RealizableSanitizerConfig config;
  config.mode = RealizableMode::kFooling;
  config.alpha = 0.5;
  auto r = RealizableSanitize(RandomPoints(4000, 2, rng), cls, {20.0, 1e-3},
                              config, rng);
  ASSERT_TRUE(r.ok());
  const PrivacyParams per = FoolingRoundBudget({20.0, 1e-3}, r->max_rounds);
  const PrivacyParams expected =
      AdvancedComposition(per.epsilon, per.delta, r->max_rounds, 1e-3 / 2);
  EXPECT_DOUBLE_EQ(r->ledger.Composed().epsilon, expected.epsilon);
  EXPECT_GT(expected.epsilon, 20.0);
}

TEST(RealizableSanitizerTest, FoolingModeCapsAndBudget) {
  Rng rng(37);
  RealizableSanitizerConfig config;
  config.mode = RealizableMode::kFooling;
  auto r = RealizableSanitize({0, 1}, *LoadClass("point:5"), {1.0, 1e-6},
                              config, rng);
  EXPECT_EQ(r.status().code(), absl::StatusCode::kResourceExhausted);
  const PrivacyParams per = FoolingRoundBudget({1.0, 1e-6}, 4);
  EXPECT_DOUBLE_EQ(per.epsilon, 1.0 / (2 * std::sqrt(8 * std::log(2e6))));
  EXPECT_DOUBLE_EQ(per.delta, 1e-6 / 8);
  config.alpha = 0;
  EXPECT_FALSE(
      RealizableSanitize({0}, *LoadClass("point:3"), {1.0, 1e-6}, config, rng)
          .ok());
}

TEST(RealizableSyntheticSequenceTest, KeepsEveryReleasedPoint) {
  const std::vector<double> counts = {0, 30, 0, 2, 50};
  auto seq = RealizableSyntheticSequence(counts, 10);
  ASSERT_EQ(seq.size(), 10u);
  std::vector<int> seen(5);
  for (const auto& x : seq) {
    ASSERT_TRUE(x.has_value());
    ++seen[*x];
  }
  EXPECT_EQ(seen[0], 0);
  EXPECT_EQ(seen[2], 0);
  EXPECT_GE(seen[3], 1);
  EXPECT_GT(seen[4], seen[1]);
  auto empty = RealizableSyntheticSequence({0, 0}, 3);
  for (const auto& x : empty) EXPECT_FALSE(x.has_value());
  auto tight = RealizableSyntheticSequence(counts, 2);
  EXPECT_EQ(tight.size(), 2u);
}

TEST(AgnosticLearnerTest, EmpiricalErrorAndRepresentatives) {
  ConceptClass cls = *LoadClass("thresh:4");
  const std::vector<LabeledExample> data = {{0, 1}, {1, 0}, {2, 1}, {3, 1}};
  for (const Hypothesis& h : cls.concepts()) {
    int wrong = 0;
    for (const LabeledExample& e : data) wrong += h(e.point) != e.label;
    EXPECT_DOUBLE_EQ(EmpiricalError(h, data), wrong / 4.0);
  }
  EXPECT_EQ(EmpiricalError(cls.concept_at(0), {}), 0.0);
  // On point 0 alone the five thresholds induce two labelings.
  const auto reps = ProjectionRepresentatives(cls.concepts(), {0, 0});
  EXPECT_EQ(reps.size(), 2u);
  EXPECT_EQ(reps.front(), 0u);
}

TEST(AgnosticLearnerTest, ScoresMatchDefinition) {
  ConceptClass cls = *LoadClass("point:3");
  const std::vector<LabeledExample> data = {{0, 1}, {1, 0}, {2, 0}, {0, 1}};
  const std::vector<int> subset = {0, 1};
  const auto reps = ProjectionRepresentatives(cls.concepts(), subset);
  const auto scores = AgnosticScores(cls.concepts(), reps, data, subset);
  for (size_t k = 0; k < reps.size(); ++k) {
    double best = 1e9;
    for (size_t f = 0; f < cls.size(); ++f) {
      double dis = 0;
      for (int x : subset) {
        dis += cls.concept_at(reps[k])(x) != cls.concept_at(f)(x);
      }
      best = std::min(
          best, dis / subset.size() + EmpiricalError(cls.concept_at(f), data));
    }
    EXPECT_DOUBLE_EQ(scores[k], best);
  }
}

TEST(AgnosticLearnerTest, HighEpsilonFindsEmpiricalMinimizer) {
  ConceptClass cls = *LoadClass("thresh:8");
  Rng rng(38);
  for (int trial = 0; trial < 50; ++trial) {
    const Hypothesis& target = cls.concept_at(rng.UniformInt(cls.size()));
    std::vector<LabeledExample> data;
    for (int i = 0; i < 400; ++i) {
      const int x = static_cast<int>(rng.UniformInt(8));
      data.push_back({x, rng.Bernoulli(0.1) ? 1 - target(x) : target(x)});
    }
    double best = 1;
    for (const Hypothesis& h : cls.concepts()) {
      best = std::min(best, EmpiricalError(h, data));
    }
    auto erm = PrivateErm(cls.concepts(), data, 200.0, rng);
    ASSERT_TRUE(erm.ok());
    EXPECT_LE(EmpiricalError(cls.concept_at(*erm), data), best + 0.05);
    auto learned = AgnosticEmpiricalLearn(data, cls.concepts(), 5.0, rng);
    ASSERT_TRUE(learned.ok());
    EXPECT_EQ(learned->subset_size, 400u);
    EXPECT_LE(EmpiricalError(cls.concept_at(learned->index), data), best + 0.1);
  }
}

TEST(AgnosticLearnerTest, SubsampledEpsilonInvertsAmplification) {
  for (double rate : {0.01, 0.1, 0.5}) {
    for (double target : {0.01, 0.5, 2.0}) {
      const double inner = SubsampledEpsilon(target, rate);
      EXPECT_NEAR(std::log1p(rate * std::expm1(inner)), target, 1e-12);
      EXPECT_GT(inner, target);
    }
  }
  EXPECT_EQ(SubsampledEpsilon(0.3, 1.0), 0.3);
}

TEST(AgnosticLearnerTest, RejectsTooLittleData) {
  ConceptClass cls = *LoadClass("thresh:4");
  Rng rng(39);
  EXPECT_FALSE(AgnosticEmpiricalLearn({{0, 1}}, cls.concepts(), 0.1, rng).ok());
  EXPECT_FALSE(AgnosticEmpiricalLearn({}, cls.concepts(), 1.0, rng).ok());
  EXPECT_FALSE(PrivateErm({}, {{0, 1}}, 1.0, rng).ok());
}

TEST(DiscriminatorTest, AugmentationAndFloors) {
  ConceptClass cls = *LoadClass("point:3");
  const auto aug = AugmentWithComplements(cls);
  ASSERT_EQ(aug.size(), 6u);
  EXPECT_EQ(aug[4], cls.concept_at(1).Complement());
  EXPECT_DOUBLE_EQ(AgnosticDiscriminatorSampleFloor(1, 0.5, 0.1),
                   std::max(20 * std::log(1200.0), 30 * std::log(30.0)) / 0.5);
  EXPECT_DOUBLE_EQ(RealizableDiscriminatorSampleFloor(1, 0.5, 0.1),
                   36 * std::log(40.0) / 0.5);
  Rng rng(40);
  EXPECT_FALSE(
      DiscriminateAgnostic({0, 1}, cls, {0, 0, 0}, {1.0, 1e-6}, 0.5, 0.1, rng)
          .ok());
}

TEST(DiscriminatorTest, AgnosticWinsOnExactMassesAndCatchesLies) {
  ConceptClass cls = *LoadClass("thresh:4");
  Rng rng(41);
  const double alpha = 0.3, beta = 0.1;
  const PrivacyParams params{5.0, 1e-6};
  const size_t n = static_cast<size_t>(
      std::ceil(AgnosticDiscriminatorSampleFloor(5.0, alpha, beta)));
  int honest_wins = 0, lies_caught = 0;
  const int trials = 100;
  for (int trial = 0; trial < trials; ++trial) {
    const std::vector<int> points = RandomPoints(n, 4, rng);
    const std::vector<double> mass = EmpiricalMass(cls, points);
    auto honest =
        DiscriminateAgnostic(points, cls, mass, params, alpha, beta, rng);
    ASSERT_TRUE(honest.ok());
    honest_wins += honest->win;

    std::vector<double> lie(mass.size());
    for (size_t i = 0; i < lie.size(); ++i) lie[i] = mass[i] > 0.5 ? 0 : 1;
    auto caught =
        DiscriminateAgnostic(points, cls, lie, params, alpha, beta, rng);
    ASSERT_TRUE(caught.ok());
    if (!caught->win) {
      const auto aug = AugmentWithComplements(cls);
      const size_t h = caught->hypothesis;
      const double ps = h < cls.size() ? mass[h] : 1 - mass[h - cls.size()];
      const double pt = h < cls.size() ? lie[h] : 1 - lie[h - cls.size()];
      lies_caught += ps - pt >= alpha / 2;
    }
  }
  EXPECT_GE(honest_wins, (1 - beta) * trials);
  EXPECT_GE(lies_caught, (1 - beta) * trials);
}

TEST(DiscriminatorTest, RealizableWinsOnCorrectQueriesAndReportsBit) {
  ConceptClass cls = *LoadClass("point:4");
  Rng rng(42);
  const double alpha = 0.3, beta = 0.1;
  const size_t n = static_cast<size_t>(
      std::ceil(RealizableDiscriminatorSampleFloor(5.0, alpha, beta)));
  int wins = 0, caught = 0;
  const int trials = 100;
  for (int trial = 0; trial < trials; ++trial) {
    // Mass 1/2 on points 0 and 1, none on 2 and 3.
    std::vector<int> points = RandomPoints(n, 2, rng);
    const std::vector<int> truth = {1, 1, 0, 0};
    auto honest = DiscriminateRealizable(points, cls, truth, {5.0, 1e-6}, alpha,
                                         beta, rng);
    ASSERT_TRUE(honest.ok());
    wins += honest->win;
    auto wrong = DiscriminateRealizable(points, cls, {0, 1, 1, 0}, {5.0, 1e-6},
                                        alpha, beta, rng);
    ASSERT_TRUE(wrong.ok());
    if (!wrong->win) {
      caught += (wrong->hypothesis == 0 && wrong->bit == 1) ||
                (wrong->hypothesis == 2 && wrong->bit == 0);
    }
  }
  EXPECT_GE(wins, (1 - beta) * trials);
  EXPECT_GE(caught, (1 - beta) * trials);
}

TEST(IntervalSanitizerTest, IdentityQueriesReturnStreamSlices) {
  Rng rng(43);
  auto s =
      IntervalSanitizer::Create(13, {1.0, 1e-6}, IdentitySequenceSanitizer());
  ASSERT_TRUE(s.ok());
  EXPECT_DOUBLE_EQ(s->per_release().epsilon, 1.0 / s->index().MaxCoverage());
  EXPECT_NEAR(s->ledger().Composed().epsilon, 1.0, 1e-12);
  std::vector<int> stream;
  for (int t = 1; t <= 13; ++t) {
    const int x = static_cast<int>(rng.UniformInt(5));
    stream.push_back(x);
    ASSERT_TRUE(s->Step(x, rng).ok());
    for (int64_t l = 1; l <= t; ++l) {
      auto q = s->Query(l, t);
      ASSERT_TRUE(q.ok());
      ASSERT_EQ(static_cast<int64_t>(q->size()), t - l + 1);
      for (int64_t k = l; k <= t; ++k) EXPECT_EQ((*q)[k - l], stream[k - 1]);
    }
  }
  EXPECT_FALSE(s->Query(1, 14).ok());
  EXPECT_EQ(static_cast<int64_t>(s->releases().size()), s->index().size());
}

TEST(IntervalSanitizerTest, DirectReleasesKeepHeavyPoints) {
  Rng rng(44);
  const PrivacyParams per{4.0, 1e-3};
  auto delta = DirectSequenceDelta(3, per);
  ASSERT_TRUE(delta.ok());
  const double threshold = *delta / 3;
  auto sanitizer = DirectSequenceSanitizer(3, per);
  std::vector<int> xs(static_cast<size_t>(threshold) + 5, 1);
  xs.push_back(2);
  for (int trial = 0; trial < 50; ++trial) {
    auto out = sanitizer(xs, rng);
    ASSERT_TRUE(out.ok());
    ASSERT_EQ(out->size(), xs.size());
    bool has1 = false;
    for (const auto& x : *out) {
      if (!x) continue;
      EXPECT_NE(*x, 0);
      has1 = has1 || *x == 1;
    }
    EXPECT_TRUE(has1);
  }
  EXPECT_FALSE(sanitizer({7}, rng).ok());
}

}  // namespace
}  // namespace dpol
