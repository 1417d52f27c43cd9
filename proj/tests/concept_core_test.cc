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

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "dpol/bit_vector.h"
#include "dpol/class_io.h"
#include "dpol/compose.h"
#include "dpol/concept_class.h"
#include "dpol/dimensions.h"
#include "dpol/rng.h"
#include "dpol/soa.h"
#include "gtest/gtest.h"
#include "oracles.h"

namespace dpol {
namespace {

using ::dpol::testing::BruteLdim;
using ::dpol::testing::BruteSoa;
using ::dpol::testing::BruteVc;
using ::dpol::testing::Matrix;
using ::dpol::testing::RandomMatrix;
using ::dpol::testing::RowsOf;

ClassPtr Share(ConceptClass cls) {
  return std::make_shared<const ConceptClass>(std::move(cls));
}

TEST(BitVectorTest, SetCountAndStringRoundTrip) {
  BitVector v(70);
  v.Set(0);
  v.Set(69);
  EXPECT_EQ(v.Count(), 2u);
  EXPECT_EQ(v.FirstSetBit(), 0u);
  EXPECT_EQ(v.NextSetBit(1), 69u);
  EXPECT_EQ(BitVector::FromString(v.ToString()), v);
  BitVector w = ~v;
  EXPECT_EQ(w.Count(), 68u);
  EXPECT_EQ(v.FirstDifference(w), 0u);
  EXPECT_FALSE(v.Intersects(w));
}

TEST(DomainTest, RejectsEmptyAndDuplicates) {
  EXPECT_FALSE(Domain::Create({}).ok());
  EXPECT_FALSE(Domain::Create({"a", "a"}).ok());
  EXPECT_TRUE(Domain::Create({"a", "b"}).ok());
}

TEST(ConceptClassTest, CollapsesDuplicatesAndChecksLengths) {
  auto cls = ConceptClass::FromRows({{0, 1}, {0, 1}, {1, 1}});
  ASSERT_TRUE(cls.ok());
  EXPECT_EQ(cls->size(), 2u);
  EXPECT_FALSE(ConceptClass::FromRows({}).ok());
  EXPECT_FALSE(
      ConceptClass::Create(Domain::Indexed(2), {Hypothesis::FromString("010")})
          .ok());
}

TEST(ClassIoTest, JsonRoundTripAndGenerators) {
  auto cls = LoadClass("thresh:4");
  ASSERT_TRUE(cls.ok());
  EXPECT_EQ(cls->size(), 5u);
  EXPECT_EQ(cls->num_points(), 4u);
  auto back = ParseClassJson(ClassToJson(*cls));
  ASSERT_TRUE(back.ok());
  EXPECT_EQ(back->concepts(), cls->concepts());
  EXPECT_EQ(back->domain(), cls->domain());
  EXPECT_EQ(LoadClass("point:4")->size(), 4u);
  EXPECT_EQ(LoadClass("cube:3")->size(), 8u);
  EXPECT_FALSE(LoadClass("cube:0").ok());
  EXPECT_FALSE(LoadClass("/nonexistent/class.json").ok());
  EXPECT_FALSE(
      ParseClassJson(R"({"domain": ["a"], "concepts": [[0, 1]]})").ok());
}

TEST(LittlestoneTest, BuiltinExamples) {
  EXPECT_EQ(LittlestoneDimension(*LoadClass("cube:3")), 3);
  EXPECT_EQ(LittlestoneDimension(*LoadClass("point:4")), 1);
  EXPECT_EQ(LittlestoneDimension(*LoadClass("thresh:4")), 2);
  EXPECT_EQ(LittlestoneDimension(*LoadClass("thresh:8")), 3);
}

TEST(VcTest, BuiltinExamples) {
  EXPECT_EQ(VcDimension(*LoadClass("cube:3")), 3);
  EXPECT_EQ(VcDimension(*LoadClass("point:4")), 1);
  EXPECT_EQ(VcDimension(*LoadClass("thresh:4")), 1);
}

TEST(DimensionsTest, AgreeWithBruteForceOnRandomClasses) {
  Rng rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const size_t points = 1 + rng.UniformInt(6);
    const size_t concepts = 1 + rng.UniformInt(24);
    const Matrix rows = RandomMatrix(concepts, points, rng);
    auto cls = ConceptClass::FromRows(rows);
    ASSERT_TRUE(cls.ok());
    EXPECT_EQ(LittlestoneDimension(*cls), BruteLdim(rows)) << trial;
    EXPECT_EQ(VcDimension(*cls), BruteVc(rows)) << trial;
  }
}

TEST(DimensionsTest, VcNeverExceedsLdim) {
  Rng rng(12);
  for (int trial = 0; trial < 1000; ++trial) {
    const size_t points = 1 + rng.UniformInt(6);
    const size_t concepts = 1 + rng.UniformInt(20);
    auto cls = ConceptClass::FromRows(RandomMatrix(concepts, points, rng));
    ASSERT_TRUE(cls.ok());
    auto dims = ComputeDims(*cls);
    ASSERT_TRUE(dims.ok()) << dims.status();
    EXPECT_LE(dims->vc, dims->ldim);
    EXPECT_LE(dims->dual_vc, dims->dual_ldim);
  }
}

TEST(DimensionsTest, SauerBound) {
  Rng rng(13);
  for (int trial = 0; trial < 200; ++trial) {
    const size_t points = 2 + rng.UniformInt(5);
    const Matrix rows = RandomMatrix(1 + rng.UniformInt(30), points, rng);
    const int vc = BruteVc(rows);
    for (uint32_t subset = 1; subset < (1u << points); ++subset) {
      std::set<std::vector<int>> patterns;
      for (const auto& r : rows) {
        std::vector<int> p;
        for (size_t x = 0; x < points; ++x) {
          if ((subset >> x) & 1u) p.push_back(r[x]);
        }
        patterns.insert(p);
      }
      const int n = __builtin_popcount(subset);
      double bound = 0;
      for (int i = 0; i <= vc; ++i) bound += testing::Binomial(n, i);
      EXPECT_LE(static_cast<double>(patterns.size()), bound);
    }
  }
}

TEST(DualClassTest, Examples) {
  auto identity = ConceptClass::FromRows({{1, 0}, {0, 1}});
  ASSERT_TRUE(identity.ok());
  ConceptClass dual = DualClass(*identity);
  EXPECT_EQ(dual.size(), 2u);
  EXPECT_TRUE(dual.IndexOf(Hypothesis::FromString("10")).has_value());
  EXPECT_TRUE(dual.IndexOf(Hypothesis::FromString("01")).has_value());

  ConceptClass cube_dual = DualClass(*LoadClass("cube:2"));
  EXPECT_EQ(cube_dual.size(), 2u);
  EXPECT_EQ(cube_dual.num_points(), 4u);

  const ConceptClass thresh = *LoadClass("thresh:4");
  EXPECT_EQ(ComputeDims(thresh)->dual_ldim,
            BruteLdim(testing::Dedup(testing::Transpose(RowsOf(thresh)))));
}

TEST(DualClassTest, DoubleDualIsIdentityUpToOrder) {
  Rng rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const size_t points = 1 + rng.UniformInt(6);
    const Matrix rows = RandomMatrix(1 + rng.UniformInt(12), points, rng);
    ConceptClass cls = *ConceptClass::FromRows(rows);
    ConceptClass twice = DualClass(DualClass(cls));
    // Duplicate columns collapse in the first transpose, so compare the
    // row sets after removing repeated columns from the original.
    std::set<std::vector<int>> cols;
    std::vector<size_t> keep;
    const Matrix t = testing::Transpose(rows);
    for (size_t x = 0; x < t.size(); ++x) {
      if (cols.insert(t[x]).second) keep.push_back(x);
    }
    std::set<std::string> expected, actual;
    for (const auto& r : rows) {
      std::string s;
      for (size_t x : keep) s += static_cast<char>('0' + r[x]);
      expected.insert(s);
    }
    for (const Hypothesis& h : twice.concepts()) actual.insert(h.ToString());
    EXPECT_EQ(expected, actual);
  }
}

TEST(SoaTest, StepExamples) {
  Soa soa(Share(*LoadClass("cube:2")));
  SoaState s = soa.Step(soa.Initial(), {0, 1});
  EXPECT_EQ(s.version_class.Count(), 2u);
  for (size_t i = s.version_class.FirstSetBit(); i < 4;
       i = s.version_class.NextSetBit(i + 1)) {
    EXPECT_EQ(soa.concept_class().concept_at(i)(0), 1);
  }

  Soa single(Share(*ConceptClass::FromRows({{1, 0}})));
  SoaState a = single.Step(single.Initial(), {0, 1});
  EXPECT_FALSE(a.failed);
  EXPECT_EQ(a.version_class.Count(), 1u);
  SoaState b = single.Step(single.Initial(), {0, 0});
  EXPECT_TRUE(b.failed);
  EXPECT_FALSE(single.Predict(b).ok());
  EXPECT_TRUE(single.Step(b, {0, 1}).failed);
}

TEST(SoaTest, PredictExamples) {
  Soa cube(Share(*LoadClass("cube:2")));
  EXPECT_EQ(cube.Predict(cube.Initial())->ToString(), "00");
  Soa single(Share(*ConceptClass::FromRows({{1, 0, 1}})));
  EXPECT_EQ(single.Predict(single.Initial())->ToString(), "101");
}

TEST(SoaTest, MatchesBruteForcePredictions) {
  Rng rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    const size_t points = 2 + rng.UniformInt(4);
    const Matrix rows = RandomMatrix(2 + rng.UniformInt(14), points, rng);
    Soa soa(Share(*ConceptClass::FromRows(rows)));
    SoaState state = soa.Initial();
    std::vector<LabeledExample> seq;
    const auto& target = rows[rng.UniformInt(rows.size())];
    for (int t = 0; t < 6; ++t) {
      auto h = soa.Predict(state);
      ASSERT_TRUE(h.ok());
      const std::vector<int> expected =
          BruteSoa(testing::Consistent(rows, seq));
      for (size_t x = 0; x < points; ++x) EXPECT_EQ((*h)(x), expected[x]);
      const int x = static_cast<int>(rng.UniformInt(points));
      seq.push_back({x, target[x]});
      state = soa.Step(state, seq.back());
    }
  }
}

TEST(SoaTest, MistakeBoundOnRealizableSequences) {
  for (const std::string spec : {"point:4", "thresh:8", "cube:3"}) {
    ClassPtr cls = Share(*LoadClass(spec));
    Soa soa(cls);
    const int d = LittlestoneDimension(*cls);
    Rng rng(16);
    for (int trial = 0; trial < 300; ++trial) {
      const Hypothesis& target = cls->concept_at(rng.UniformInt(cls->size()));
      SoaState state = soa.Initial();
      int mistakes = 0;
      for (int t = 0; t < 40; ++t) {
        const int x = static_cast<int>(rng.UniformInt(cls->num_points()));
        mistakes += (*soa.Predict(state))(x) != target(x);
        state = soa.Step(state, {x, target(x)});
      }
      EXPECT_LE(mistakes, d) << spec;
    }
  }
}

TEST(ComposeTest, LabelClassDefinition) {
  ConceptClass zero = *ConceptClass::FromRows({{0}});
  ConceptClass lifted = LabelClass(zero);
  ASSERT_EQ(lifted.num_points(), 2u);
  EXPECT_EQ(lifted.concept_at(0)(LabeledPointIndex(0, 0)), 0);
  EXPECT_EQ(lifted.concept_at(0)(LabeledPointIndex(0, 1)), 1);
}

TEST(ComposeTest, MajorityOfOneIsIdentity) {
  ConceptClass cls = *LoadClass("thresh:4");
  auto maj = MajorityClass(cls, 1);
  ASSERT_TRUE(maj.ok());
  EXPECT_EQ(maj->size(), cls.size());
  for (const Hypothesis& h : cls.concepts()) {
    EXPECT_TRUE(maj->IndexOf(h).has_value());
  }
}

TEST(ComposeTest, XorLdimWithinMeasuredBound) {
  ConceptClass t = *LoadClass("thresh:4");
  ConceptClass x = XorClass(t, t);
  const int ldim = LittlestoneDimension(x);
  EXPECT_EQ(ldim, BruteLdim(RowsOf(x)));
  // k = 2 classes of dimension d = 2: k d log2 k = 4.
  EXPECT_LE(ldim, 2 * 4);
  ConceptClass other = *LoadClass("point:3");
  auto mismatched = ComposeBoolean(
      {&t, &other}, [](absl::Span<const int> b) { return b[0]; });
  EXPECT_FALSE(mismatched.ok());
}

TEST(ComposeTest, ThresholdFractionClassShape) {
  ConceptClass h = *LoadClass("point:3");
  auto x = ThresholdFractionClass(h, 2, 0.5);
  ASSERT_TRUE(x.ok());
  EXPECT_EQ(x->num_points(), h.size());
  for (const Hypothesis& q : x->concepts()) EXPECT_EQ(q.size(), h.size());
}

}  // namespace
}  // namespace dpol
