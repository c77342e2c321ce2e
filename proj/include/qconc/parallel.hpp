// Copyright 2026 The qconc Authors
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
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace qconc {

/// Number of worker threads used by chunked reductions.
inline unsigned worker_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Splits [0, count) into fixed-size chunks, evaluates `work(begin, end)` for
/// each chunk (possibly concurrently), and folds the chunk results into `acc`
/// strictly in chunk order with `combine(acc, chunk_result)`. The fold order
/// is independent of the thread count, so floating-point results are too.
template <typename Partial, typename Work, typename Combine>
void chunked_reduce(std::size_t count, std::size_t chunk, Work&& work, Combine&& combine) {
  const std::size_t chunks = (count + chunk - 1) / chunk;
  const std::size_t wave = worker_threads();
  for (std::size_t first = 0; first < chunks; first += wave) {
    const std::size_t last = std::min(chunks, first + wave);
    std::vector<Partial> partials(last - first);
    if (last - first == 1) {
      partials[0] = work(first * chunk, std::min(count, (first + 1) * chunk));
    } else {
      std::vector<std::exception_ptr> errors(last - first);
      std::vector<std::thread> threads;
      threads.reserve(last - first);
      for (std::size_t c = first; c < last; ++c) {
        threads.emplace_back([&, c] {
          try {
            partials[c - first] = work(c * chunk, std::min(count, (c + 1) * chunk));
          } catch (...) {
            errors[c - first] = std::current_exception();
          }
        });
      }
      for (auto& t : threads) t.join();
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    }
    for (auto& p : partials) combine(p);
  }
}

}  // namespace qconc
