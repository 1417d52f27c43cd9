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

#include "dpol/realizable_learner.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <vector>

#include "dpol/adversary.h"
#include "dpol/class_io.h"
#include "dpol/dimensions.h"
#include "dpol/game.h"
#include "dpol/rng.h"
#include "dpol/soa.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace dpol {
namespace {

using ::dpol::testing::Slot;

ClassPtr Builtin(const std::string& spec) {
  return std::make_shared<const ConceptClass>(*LoadClass(spec));
}

TEST(RealizableConstantsTest, RoundsN0AndScalesThresholds) {
  RealizableConfig config;
  config.T = 100;
  config.N0 = 100;
  auto c = ResolveRealizableConstants(config, 2);
  ASSERT_TRUE(c.ok());
  EXPECT_EQ(c->N0, 128u);
  EXPECT_EQ(c->N(1), 64u);
  EXPECT_DOUBLE_EQ(c->epsilon0, 0.5);
  EXPECT_DOUBLE_EQ(c->M(0), 128.0 * std::exp2(-6.0) * 128);
  EXPECT_DOUBLE_EQ(c->M(1), 128.0 * std::exp2(-12.0) * 64);
  EXPECT_DOUBLE_EQ(c->filter(1), 0.75 * c->M(1));
  EXPECT_NEAR(c->svt_margin, 8 * (std::log(100.0) + std::log(600 / 0.05)) / 0.5,
              1e-9);
  EXPECT_DOUBLE_EQ(c->svt_threshold(1), 64 + c->svt_margin);

  config.N0 = 2;
  EXPECT_EQ(ResolveRealizableConstants(config, 3)->N0, 16u);
  config.constant_scale = 0.5;
  EXPECT_DOUBLE_EQ(ResolveRealizableConstants(config, 2)->M(0),
                   0.5 * 128.0 * std::exp2(-6.0) * 8);
}

TEST(RealizableConstantsTest, RejectsBadConfigs) {
  RealizableConfig config;
  config.params = {1.0, 0.0};
  EXPECT_FALSE(ResolveRealizableConstants(config, 1).ok());
  config.params = {1.0, 1e-6};
  config.beta = 1.0;
  EXPECT_FALSE(ResolveRealizableConstants(config, 1).ok());
  config.beta = 0.05;
  config.constant_scale = 0;
  EXPECT_FALSE(ResolveRealizableConstants(config, 1).ok());
  config.constant_scale = 1;
  config.faithful_constants = true;
  EXPECT_FALSE(ResolveRealizableConstants(config, 3).ok());
}

TEST(RealizableConstantsTest, FaithfulN0ForDimensionZero) {
  const double n0 = FaithfulN0(0, {1.0, 1e-6}, 0.05);
  EXPECT_DOUBLE_EQ(n0, 2 * std::exp2(24.0) * std::log(6 / 0.05));
}

TEST(UpdateLayerTest, CubeExample) {
  ClassPtr cube = Builtin("cube:2");
  Soa soa(cube);
  const std::vector<NodeSequence> layer = {
      NodeSequence::Of({}),   NodeSequence::Of({{0, 1}}),
      NodeSequence::Of({}),   NodeSequence::Of({}),
      NodeSequence::Bottom(), NodeSequence::Of({{1, 1}})};
  auto children = UpdateLayerWithDraws(layer, soa, {1, 0, 0}, {2, 0, 1});
  ASSERT_TRUE(children.ok());
  ASSERT_EQ(children->size(), 3u);
  // SOA(empty) = 00 and SOA((0,1)) = 10 first differ at point 0; label 1
  // makes the empty sequence the erring sibling.
  EXPECT_EQ((*children)[2], NodeSequence::Of({{0, 1}}));
  EXPECT_TRUE((*children)[0].bottom);
  EXPECT_TRUE((*children)[1].bottom);

  auto other = UpdateLayerWithDraws(layer, soa, {0, 0, 0}, {0, 1, 2});
  ASSERT_TRUE(other.ok());
  EXPECT_EQ((*other)[0], NodeSequence::Of({{0, 1}, {0, 0}}));
}

TEST(UpdateLayerTest, RejectsMalformedDraws) {
  Soa soa(Builtin("cube:2"));
  std::vector<NodeSequence> odd(3, NodeSequence::Of({}));
  EXPECT_FALSE(UpdateLayerWithDraws(odd, soa, {0}, {0}).ok());
  std::vector<NodeSequence> four(4, NodeSequence::Of({}));
  EXPECT_FALSE(UpdateLayerWithDraws(four, soa, {0, 0}, {0, 0}).ok());
  EXPECT_FALSE(UpdateLayerWithDraws(four, soa, {0}, {0, 1}).ok());
  EXPECT_FALSE(UpdateLayerWithDraws(four, soa, {0, 0}, {0, 2}).ok());
}

TEST(UpdateLayerTest, InconsistentSequencesNeverCollide) {
  Soa soa(Builtin("cube:2"));
  const std::vector<NodeSequence> layer = {NodeSequence::Of({{0, 1}, {0, 0}}),
                                           NodeSequence::Of({})};
  auto children = UpdateLayerWithDraws(layer, soa, {1}, {0});
  ASSERT_TRUE(children.ok());
  EXPECT_TRUE((*children)[0].bottom);
}

TEST(UpdateLayerTest, MatchesBruteForceTournament) {
  Rng rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    const size_t points = 2 + rng.UniformInt(3);
    const auto rows =
        testing::RandomMatrix(2 + rng.UniformInt(10), points, rng);
    auto cls =
        std::make_shared<const ConceptClass>(*ConceptClass::FromRows(rows));
    Soa soa(cls);
    const size_t pairs = 1 + rng.UniformInt(4);
    std::vector<NodeSequence> layer;
    std::vector<Slot> slots;
    for (size_t i = 0; i < 2 * pairs; ++i) {
      if (rng.Bernoulli(0.15)) {
        layer.push_back(NodeSequence::Bottom());
        slots.push_back(std::nullopt);
        continue;
      }
      std::vector<LabeledExample> seq;
      const size_t len = rng.UniformInt(3);
      for (size_t k = 0; k < len; ++k) {
        seq.push_back({static_cast<int>(rng.UniformInt(points)),
                       static_cast<int>(rng.UniformInt(2))});
      }
      layer.push_back(NodeSequence::Of(seq));
      slots.push_back(seq);
    }
    std::vector<int> labels(pairs);
    for (int& y : labels) y = static_cast<int>(rng.UniformInt(2));
    std::vector<size_t> perm(pairs);
    for (size_t i = 0; i < pairs; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng.engine());

    auto got = UpdateLayerWithDraws(layer, soa, labels, perm);
    ASSERT_TRUE(got.ok());
    const auto want = testing::BruteUpdateLayer(rows, slots, labels, perm);
    ASSERT_EQ(got->size(), want.size());
    for (size_t i = 0; i < want.size(); ++i) {
      EXPECT_EQ((*got)[i].bottom, !want[i].has_value());
      if (want[i]) EXPECT_EQ((*got)[i].examples, *want[i]);
    }
  }
}

TEST(UpdateLayerTest, TargetConsistentChildWhenLabelFollowsTarget) {
  // If both siblings are consistent with f and the tournament label is f(x),
  // the child is consistent with f and one example longer.
  ClassPtr cls = Builtin("thresh:8");
  Soa soa(cls);
  Rng rng(22);
  for (int trial = 0; trial < 500; ++trial) {
    const Hypothesis& f = cls->concept_at(rng.UniformInt(cls->size()));
    std::vector<NodeSequence> layer;
    for (int s = 0; s < 2; ++s) {
      std::vector<LabeledExample> seq;
      const size_t len = rng.UniformInt(4);
      for (size_t k = 0; k < len; ++k) {
        const int x = static_cast<int>(rng.UniformInt(cls->num_points()));
        seq.push_back({x, f(x)});
      }
      layer.push_back(NodeSequence::Of(seq));
    }
    const BitVector va = soa.VersionClassOf(layer[0].examples);
    const BitVector vb = soa.VersionClassOf(layer[1].examples);
    const Hypothesis pa = *soa.PredictMask(va);
    const Hypothesis pb = *soa.PredictMask(vb);
    if (pa == pb) continue;
    const size_t x = pa.bits().FirstDifference(pb.bits());
    auto children = UpdateLayerWithDraws(layer, soa, {f(x)}, {0});
    ASSERT_TRUE(children.ok());
    ASSERT_FALSE((*children)[0].bottom);
    const auto& child = (*children)[0].examples;
    const size_t erring = pa(x) != f(x) ? 0 : 1;
    EXPECT_EQ(child.size(), layer[erring].examples.size() + 1);
    for (const LabeledExample& e : child) EXPECT_EQ(f(e.point), e.label);
  }
}

RealizableConfig SmallConfig(int64_t T) {
  RealizableConfig config;
  config.T = T;
  config.params = {4.0, 1e-6};
  config.N0 = 512;
  return config;
}

TEST(RealizableLearnerTest, LedgerComposesToConfiguredBudget) {
  for (const std::string spec : {"point:4", "thresh:4", "cube:2"}) {
    Rng rng(23);
    RealizableConfig config = SmallConfig(64);
    config.params = {1.0, 1e-6};
    auto learner = RealizableLearner::Create(Builtin(spec), config, rng);
    ASSERT_TRUE(learner.ok());
    const PrivacyParams total = (*learner)->ledger().Composed();
    EXPECT_NEAR(total.epsilon, 1.0, 1e-12) << spec;
    EXPECT_NEAR(total.delta, 1e-6, 1e-18) << spec;
  }
}

TEST(RealizableLearnerTest, SingleConceptClassUsesOnlySvt) {
  auto single = std::make_shared<const ConceptClass>(
      *ConceptClass::FromRows({{0, 1, 1}}));
  Rng rng(24);
  auto learner = RealizableLearner::Create(single, SmallConfig(16), rng);
  ASSERT_TRUE(learner.ok());
  EXPECT_EQ((*learner)->constants().d, 0);
  EXPECT_EQ((*learner)->ledger().entries().size(), 1u);
  EXPECT_EQ((*learner)->Predict(rng)->ToString(), "011");
}

TEST(RealizableLearnerTest, InitialPredictionIsSoaOfEmptySequence) {
  Rng rng(25);
  ClassPtr cls = Builtin("cube:3");
  auto learner = *RealizableLearner::Create(cls, SmallConfig(16), rng);
  Soa soa(cls);
  EXPECT_EQ(*learner->Predict(rng), *soa.Predict(soa.Initial()));
  EXPECT_EQ(learner->frequent().size(), 1u);
  EXPECT_EQ(learner->layer(), 0);
  auto layer = learner->CurrentLayer();
  ASSERT_TRUE(layer.ok());
  EXPECT_EQ(layer->size(), learner->constants().N0);
  for (const NodeSequence& s : *layer) {
    EXPECT_FALSE(s.bottom);
    EXPECT_TRUE(s.examples.empty());
  }
}

TEST(RealizableLearnerTest, StreamIsReadOnlyThroughInsertionAndSvt) {
  Rng rng(26);
  ClassPtr cls = Builtin("thresh:4");
  RealizableConfig config = SmallConfig(512);
  AdversarySpec spec;
  auto learner = *RealizableLearner::Create(cls, config, rng);
  auto adversary = *MakeAdversary(spec, cls);
  GameOptions options;
  options.T = config.T;
  auto transcript = RunGame(*learner, *adversary, *cls, options, rng);
  ASSERT_TRUE(transcript.ok());
  const InformationFlowProbe& probe = learner->probe();
  EXPECT_EQ(probe.other_reads, 0);
  EXPECT_LE(probe.insertion_reads, config.T);
  const int64_t live =
      transcript->halted_at < 0 ? config.T : transcript->halted_at;
  EXPECT_EQ(probe.svt_reads, live);
}

TEST(RealizableLearnerTest, SequencesAtLayerSHaveLengthAtMostTwoS) {
  for (uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    ClassPtr cls = Builtin("thresh:4");
    auto learner = *RealizableLearner::Create(cls, SmallConfig(1024), rng);
    auto adversary = *MakeAdversary(AdversarySpec{}, cls);
    GameOptions options;
    options.T = 1024;
    ASSERT_TRUE(RunGame(*learner, *adversary, *cls, options, rng).ok());
    const auto& lengths = learner->max_length_at_layer_start();
    for (size_t s = 0; s < lengths.size(); ++s) EXPECT_LE(lengths[s], 2 * s);
    EXPECT_LE(learner->layer(), learner->constants().d);
    int64_t last_round = 0;
    for (const RealizableEvent& e : learner->events()) {
      EXPECT_GE(e.round, last_round);
      last_round = e.round;
    }
  }
}

TEST(RealizableLearnerTest, HaltedLearnerKeepsLastOutput) {
  Rng rng(27);
  ClassPtr cls = Builtin("point:4");
  RealizableConfig config = SmallConfig(64);
  config.N0 = 4;
  config.constant_scale = 1e-3;
  auto learner = *RealizableLearner::Create(cls, config, rng);
  Hypothesis last = *learner->Predict(rng);
  for (int t = 0; t < 64 && !learner->halted(); ++t) {
    last = *learner->Predict(rng);
    ASSERT_TRUE(learner->Observe({0, 1 - last(0)}, rng).ok());
  }
  ASSERT_TRUE(learner->halted());
  EXPECT_EQ(*learner->Predict(rng), last);
  EXPECT_TRUE(learner->Observe({1, 0}, rng).ok());
}

TEST(RunRealizableTest, DeterministicForFixedSeed) {
  ClassPtr cls = Builtin("point:4");
  RealizableConfig config = SmallConfig(256);
  Rng a(99), b(99);
  auto ta = RunRealizable(cls, config, AdversarySpec{}, a);
  auto tb = RunRealizable(cls, config, AdversarySpec{}, b);
  ASSERT_TRUE(ta.ok());
  ASSERT_TRUE(tb.ok());
  EXPECT_TRUE(*ta == *tb);
  EXPECT_EQ(ta->meta.at("mode"), "realizable");
  EXPECT_EQ(ta->meta.at("N0"), "512");
}

TEST(RunRealizableTest, FewMistakesOnPointClass) {
  ClassPtr cls = Builtin("point:4");
  RealizableConfig config = SmallConfig(4096);
  double total = 0;
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    auto t = RunRealizable(cls, config, AdversarySpec{}, rng);
    ASSERT_TRUE(t.ok());
    total += static_cast<double>(t->mistakes());
  }
  EXPECT_LT(total / 10, 0.25 * 4096);
}

}  // namespace
}  // namespace dpol
