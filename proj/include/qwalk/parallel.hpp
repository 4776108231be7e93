// parallel.hpp -- minimal deterministic work distribution. Each job index
// owns its output slot, so results never depend on scheduling; reductions in
// callers must combine per-chunk partials in a fixed order.
#ifndef QWALK_PARALLEL_HPP
#define QWALK_PARALLEL_HPP

#include <Eigen/Dense>

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qwalk {

// Run fn(i) for i in [0, count) on up to `threads` worker threads. Falls back
// to a plain loop for a single thread or a single job. The first exception
// thrown by any job is rethrown on the calling thread after all workers join.
template <typename Fn>
void parallel_for_index(Eigen::Index count, int threads, Fn&& fn) {
  if (count <= 0) return;
  const int workers =
      static_cast<int>(std::min<Eigen::Index>(std::max(threads, 1), count));
  if (workers <= 1) {
    for (Eigen::Index i = 0; i < count; ++i) fn(i);
    return;
  }

  std::atomic<Eigen::Index> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      const Eigen::Index i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace qwalk

#endif  // QWALK_PARALLEL_HPP
