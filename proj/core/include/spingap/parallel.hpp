#pragma once

#include <cstddef>
#include <functional>

namespace spingap {

/// Parallel-map capability handed to scan operations. Work items must be
/// independent; results are merged by index, so output is deterministic
/// regardless of scheduling. Default-constructed instances run serially.
class ParallelMap {
 public:
  ParallelMap() = default;
  explicit ParallelMap(unsigned threads) : threads_(threads) {}

  static ParallelMap hardware();

  unsigned threads() const noexcept { return threads_; }

  /// Invokes fn(0..n-1), possibly concurrently. The first exception thrown
  /// by any item is rethrown after all workers stop.
  void for_each_index(std::size_t n, const std::function<void(std::size_t)>& fn) const;

 private:
  unsigned threads_ = 1;
};

}  // namespace spingap
