#pragma once

#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace psplit {

// Runs body(begin, end) over a contiguous partition of [0, n).
// Workers must write only to disjoint, preallocated slots; reductions over
// the results happen sequentially afterwards, so outputs do not depend on
// the thread count.
template <typename Body>
void parallel_for(std::size_t n, unsigned n_threads, Body&& body) {
  if (n == 0) return;
  if (n_threads < 1) n_threads = 1;
  if (n_threads == 1 || n < 2 * n_threads) {
    body(std::size_t{0}, n);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(n_threads);
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const std::size_t chunk = (n + n_threads - 1) / n_threads;
  for (unsigned t = 0; t < n_threads; ++t) {
    const std::size_t begin = std::min(n, t * chunk);
    const std::size_t end = std::min(n, begin + chunk);
    if (begin == end) break;
    workers.emplace_back([&, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& w : workers) w.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace psplit
