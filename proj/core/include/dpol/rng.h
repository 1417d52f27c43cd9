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

#ifndef DPOL_RNG_H_
#define DPOL_RNG_H_

#include <cstdint>
#include <random>

namespace dpol {

// Seeded, splittable random stream. Every mechanism takes an explicit Rng&;
// Split() derives an independent child stream deterministically.
class Rng {
 public:
  explicit Rng(uint64_t seed);

  // Child stream; successive calls yield distinct children.
  Rng Split();
  // Child stream keyed by `key`, independent of how much this stream was
  // consumed.
  Rng Fork(uint64_t key) const;

  uint64_t seed() const { return seed_; }

  uint64_t NextU64() { return engine_(); }
  // Uniform on [0, 1) with 53 random bits.
  double Uniform();
  // Uniform on (0, 1).
  double UniformOpen();
  // Uniform integer in [0, n); n must be positive.
  uint64_t UniformInt(uint64_t n);
  bool Bernoulli(double p) { return Uniform() < p; }

  std::mt19937_64& engine() { return engine_; }

 private:
  uint64_t seed_;
  uint64_t splits_ = 0;
  std::mt19937_64 engine_;
};

uint64_t SplitMix64(uint64_t x);

}  // namespace dpol

#endif  // DPOL_RNG_H_
