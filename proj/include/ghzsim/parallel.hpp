// Copyright 2026 The ghzsim Authors
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

#pragma once

#include <algorithm>
#include <cstdint>
#include <thread>
#include <vector>

namespace ghzsim {

/// Resolves a worker count: 0 means one per hardware thread, and never more
/// workers than items.
inline unsigned resolve_workers(unsigned requested, std::uint64_t items) {
  unsigned w = requested == 0 ? std::max(1U, std::thread::hardware_concurrency()) : requested;
  return static_cast<unsigned>(std::max<std::uint64_t>(1, std::min<std::uint64_t>(w, items)));
}

/// Calls fn(worker, begin, end) on contiguous slices of [0, items).
/// Slice boundaries depend only on (items, workers).
template <typename Fn>
void for_each_slice(std::uint64_t items, unsigned workers, Fn&& fn) {
  if (workers <= 1) {
    fn(0U, std::uint64_t{0}, items);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&fn, items, workers, w] {
      fn(w, items * w / workers, items * (w + 1) / workers);
    });
  }
}

}  // namespace ghzsim
