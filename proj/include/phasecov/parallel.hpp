// Copyright 2026 The phasecov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdlib>
#include <string_view>
#include <thread>
#include <vector>

namespace phasecov {

/// Worker count from PHASECOV_THREADS; unset, 0 or unparsable means one
/// worker per hardware thread.
inline unsigned configured_threads() {
  unsigned requested = 0;
  if (const char* env = std::getenv("PHASECOV_THREADS")) {
    const std::string_view s(env);
    std::from_chars(s.data(), s.data() + s.size(), requested);
  }
  if (requested == 0) requested = std::max(1u, std::thread::hardware_concurrency());
  return requested;
}

/// Splits [0, n) into at most `workers` contiguous chunks and calls
/// body(begin, end, chunk) for each, one thread per chunk. Chunk k always
/// covers the same range for a given (n, workers), so per-chunk results can
/// be reduced in chunk order.
template <typename Body>
void parallel_chunks(std::size_t n, unsigned workers, Body&& body) {
  const std::size_t chunks = std::max<std::size_t>(1, std::min<std::size_t>(workers, n));
  const std::size_t step = (n + chunks - 1) / chunks;
  if (chunks == 1) {
    body(std::size_t{0}, n, std::size_t{0});
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(chunks);
  for (std::size_t k = 0; k < chunks; ++k) {
    const std::size_t begin = std::min(n, k * step);
    const std::size_t end = std::min(n, begin + step);
    pool.emplace_back([&body, begin, end, k] { body(begin, end, k); });
  }
}

}  // namespace phasecov
