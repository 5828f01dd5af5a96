#ifndef RELBOUND_PARALLEL_HPP_
#define RELBOUND_PARALLEL_HPP_

#include <atomic>
#include <exception>
#include <algorithm>
#include <thread>
#include <vector>

namespace relbound {

/// Evaluates fn(0..count-1) on up to `workers` threads. Results are returned in
/// index order whatever the scheduling; the first exception (by index) is rethrown.
template <class R, class Fn>
std::vector<R> parallel_map(std::size_t count, unsigned workers, Fn&& fn) {
  std::vector<R> results(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        results[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  if (threads <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace relbound

#endif  // RELBOUND_PARALLEL_HPP_
