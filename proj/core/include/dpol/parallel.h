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

#ifndef DPOL_PARALLEL_H_
#define DPOL_PARALLEL_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "absl/status/status.h"
#include "dpol/rng.h"

namespace dpol {

// Runs fn(i, rng_i) for i in [0, n) on `workers` threads, where rng_i is
// root.Fork(i). Results do not depend on the worker count. Returns the
// first error by trial index.
absl::Status RunTrials(int64_t n, int workers, const Rng& root,
                       const std::function<absl::Status(int64_t, Rng&)>& fn);

// Worker count to use when the caller passes 0.
int DefaultWorkers();

}  // namespace dpol

#endif  // DPOL_PARALLEL_H_
