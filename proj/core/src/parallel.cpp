#include "spingap/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace spingap {

ParallelMap ParallelMap::hardware() {
  unsigned n = std::thread::hardware_concurrency();
  return ParallelMap(n > 0 ? n : 1);
}

void ParallelMap::for_each_index(std::size_t n,
                                 const std::function<void(std::size_t)>& fn) const {
  if (n == 0) return;
  const unsigned workers = std::min<std::size_t>(threads_ > 0 ? threads_ : 1, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace spingap
