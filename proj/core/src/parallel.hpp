// Copyright 2026 The qwalk5 Authors
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
#ifndef QWALK5_SRC_PARALLEL_HPP_
#define QWALK5_SRC_PARALLEL_HPP_

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace qwalk5::detail {

/// Runs body(i) for i in [begin, end) across contiguous chunks, one chunk
/// per hardware thread. Each index is visited exactly once, so callers that
/// write only to slot i get schedule-independent results. The first
/// exception thrown by any worker is rethrown on the calling thread.
template <class Body>
void parallel_for(int begin, int end, Body&& body, int min_per_thread = 1) {
  const int count = end - begin;
  if (count <= 0) return;
  const int hw = std::max(1, static_cast<int>(std::thread::hardware_concurrency()));
  const int workers = std::clamp(count / std::max(1, min_per_thread), 1, hw);
  if (workers == 1) {
    for (int i = begin; i < end; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    const int lo = begin + static_cast<int>(static_cast<long long>(count) * w / workers);
    const int hi = begin + static_cast<int>(static_cast<long long>(count) * (w + 1) / workers);
    pool.emplace_back([&, lo, hi, w] {
      try {
        for (int i = lo; i < hi; ++i) body(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace qwalk5::detail

#endif  // QWALK5_SRC_PARALLEL_HPP_
