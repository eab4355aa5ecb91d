// Copyright 2026 The Sampriv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SAMPRIV_PARALLEL_HPP_
#define SAMPRIV_PARALLEL_HPP_

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace sampriv {

// Runs fn(0..count-1) across up to num_threads workers (0 = hardware
// concurrency). Work items must be independent and write only to their own
// slots; results are then identical for every thread count.
template <typename Fn>
void parallel_for(int64_t count, int num_threads, Fn&& fn) {
  if (count <= 0) return;
  int workers = num_threads > 0
                    ? num_threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  if (workers > count) workers = static_cast<int>(count);

  if (workers == 1) {
    for (int64_t i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<int64_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int64_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace sampriv

#endif  // SAMPRIV_PARALLEL_HPP_
