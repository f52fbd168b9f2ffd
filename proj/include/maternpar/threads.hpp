#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace maternpar {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : int(hw);
}

/// Static range split over a fixed number of worker threads. Work items write
/// to disjoint outputs, so results are independent of the schedule. The first
/// exception thrown by a worker is rethrown on the calling thread.
inline void parallel_for(std::int64_t count, int threads,
                         const std::function<void(std::int64_t, std::int64_t)>& body) {
  const std::int64_t nt =
      std::min<std::int64_t>(resolve_threads(threads), std::max<std::int64_t>(count, 1));
  if (nt <= 1 || count <= 1) {
    body(0, count);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(std::size_t(nt));
  std::exception_ptr error;
  std::mutex error_mutex;
  const std::int64_t chunk = (count + nt - 1) / nt;
  for (std::int64_t t = 0; t < nt; ++t) {
    const std::int64_t b = t * chunk;
    const std::int64_t e = std::min<std::int64_t>(b + chunk, count);
    if (b >= e) break;
    pool.emplace_back([&, b, e] {
      try {
        body(b, e);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

} // namespace maternpar
