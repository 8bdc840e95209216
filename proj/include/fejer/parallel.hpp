#ifndef FEJER_PARALLEL_HPP
#define FEJER_PARALLEL_HPP

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace fejer {

/// Worker count: FEJER_THREADS if set and positive, otherwise the hardware concurrency.
inline std::size_t thread_count() {
  if (const char* env = std::getenv("FEJER_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<std::size_t>(v);
  }
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

/// Runs body(begin, end) over contiguous chunks of [0, count). Results must be
/// written to per-index slots or merged order-independently by the caller.
template <typename Body>
void parallel_chunks(std::size_t count, Body&& body, std::size_t workers = thread_count()) {
  workers = std::clamp<std::size_t>(workers, 1, std::max<std::size_t>(count, 1));
  if (workers == 1) {
    body(std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr failure;
  std::mutex mu;
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        body(begin, end);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn, std::size_t workers = thread_count()) {
  parallel_chunks(
      count,
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) fn(i);
      },
      workers);
}

}  // namespace fejer

#endif  // FEJER_PARALLEL_HPP
