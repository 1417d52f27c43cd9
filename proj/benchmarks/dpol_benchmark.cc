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
#include <string>
#include <vector>

#include "benchmark/benchmark.h"
#include "dpol/adversary.h"
#include "dpol/class_io.h"
#include "dpol/concept_class.h"
#include "dpol/dimensions.h"
#include "dpol/experts.h"
#include "dpol/game.h"
#include "dpol/histogram.h"
#include "dpol/interval_sanitizer.h"
#include "dpol/private_ope.h"
#include "dpol/realizable_learner.h"
#include "dpol/rng.h"
#include "dpol/soa.h"

namespace dpol {
namespace {

ClassPtr Load(const std::string& spec) {
  return std::make_shared<const ConceptClass>(*LoadClass(spec));
}

void BM_LittlestoneDimension(benchmark::State& state) {
  ClassPtr cls = Load("cube:" + std::to_string(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(LittlestoneDimension(*cls));
  }
}
BENCHMARK(BM_LittlestoneDimension)->DenseRange(3, 5);

void BM_SoaPredict(benchmark::State& state) {
  ClassPtr cls = Load("thresh:" + std::to_string(state.range(0)));
  Rng rng(1);
  for (auto _ : state) {
    // A fresh oracle each time so the memo starts cold.
    Soa soa(cls);
    SoaState s = soa.Initial();
    const int x = static_cast<int>(rng.UniformInt(cls->num_points()));
    s = soa.Step(std::move(s), {x, 1});
    benchmark::DoNotOptimize(soa.Predict(s));
  }
}
BENCHMARK(BM_SoaPredict)->RangeMultiplier(4)->Range(16, 256);

void BM_RealizableRun(benchmark::State& state) {
  ClassPtr cls = Load("point:4");
  RealizableConfig config;
  config.T = state.range(0);
  config.params = {8.0, 1e-6};
  config.N0 = 512;
  uint64_t seed = 0;
  for (auto _ : state) {
    Rng rng(++seed);
    benchmark::DoNotOptimize(RunRealizable(cls, config, AdversarySpec{}, rng));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RealizableRun)->RangeMultiplier(4)->Range(1 << 10, 1 << 14);

void BM_PrivateHistogram(benchmark::State& state) {
  Rng rng(2);
  std::vector<int> data(state.range(0));
  for (int& k : data) k = static_cast<int>(rng.UniformInt(64));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        PrivateHistogram<int>(data, PrivacyParams{1.0, 1e-6}, rng));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_PrivateHistogram)->RangeMultiplier(8)->Range(64, 1 << 15);

void BM_ConstructExperts(benchmark::State& state) {
  ClassPtr cls = Load("point:8");
  Soa soa(cls);
  const int64_t T = state.range(0);
  Rng rng(3);
  std::vector<int> xs(T);
  for (int& x : xs) x = static_cast<int>(rng.UniformInt(8));
  for (auto _ : state) {
    auto sanitizer =
        *IntervalSanitizer::Create(T, {1.0, 1e-6}, IdentitySequenceSanitizer());
    benchmark::DoNotOptimize(ConstructExperts(soa, xs, 1, sanitizer, rng));
  }
}
BENCHMARK(BM_ConstructExperts)->RangeMultiplier(2)->Range(16, 128);

void BM_PrivateOpe(benchmark::State& state) {
  const size_t N = state.range(0);
  const int64_t T = 256;
  Rng rng(4);
  std::vector<double> loss(N);
  for (auto _ : state) {
    OpeConfig config;
    config.N = N;
    config.T = T;
    auto ope = *PrivateOpe::Create(config);
    for (int64_t t = 0; t < T; ++t) {
      for (double& l : loss) l = rng.Uniform();
      benchmark::DoNotOptimize(ope.Step(loss, rng));
    }
  }
  state.SetItemsProcessed(state.iterations() * T);
}
BENCHMARK(BM_PrivateOpe)->RangeMultiplier(8)->Range(8, 4096);

}  // namespace
}  // namespace dpol

BENCHMARK_MAIN();
