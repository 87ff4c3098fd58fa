#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace duo {

// Worker count from DUO_EMBED_THREADS (0 or unset = hardware concurrency).
int worker_count();

// Runs f(begin, end) over contiguous chunks of [0, n). Results must not depend
// on the chunking; callers write to disjoint outputs.
template <class F>
void parallel_for(std::int64_t n, F&& f, std::int64_t min_chunk = 16) {
  if (n <= 0) return;
  std::int64_t workers = std::min<std::int64_t>(worker_count(), (n + min_chunk - 1) / min_chunk);
  if (workers <= 1) {
    f(std::int64_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::int64_t chunk = (n + workers - 1) / workers;
  for (std::int64_t w = 0; w < workers; ++w) {
    std::int64_t b = w * chunk, e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&, w, b, e] {
      try {
        f(b, e);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

}  // namespace duo
