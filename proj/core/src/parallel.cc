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

#include "dpol/parallel.h"

#include <algorithm>
#include <atomic>
#include <thread>

namespace dpol {

int DefaultWorkers() {
  return std::max(1u, std::thread::hardware_concurrency());
}

absl::Status RunTrials(int64_t n, int workers, const Rng& root,
                       const std::function<absl::Status(int64_t, Rng&)>& fn) {
  if (n <= 0) return absl::OkStatus();
  if (workers <= 0) workers = DefaultWorkers();
  workers = static_cast<int>(std::min<int64_t>(workers, n));
  std::vector<absl::Status> errors(n);
  std::atomic<int64_t> next{0};
  auto work = [&] {
    for (int64_t i = next++; i < n; i = next++) {
      Rng rng = root.Fork(static_cast<uint64_t>(i));
      errors[i] = fn(i, rng);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  for (absl::Status& s : errors) {
    if (!s.ok()) return s;
  }
  return absl::OkStatus();
}

}  // namespace dpol
