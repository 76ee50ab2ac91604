#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace hmfree {

/// Applies a pure function to every index in [0, count) and returns the
/// results in index order, chunking across hardware threads. The merge is
/// deterministic; the first exception (by lowest chunk) is rethrown.
template <class Fn>
auto parallel_map(std::size_t count, const Fn& fn)
    -> std::vector<std::decay_t<decltype(fn(std::size_t{0}))>> {
  using R = std::decay_t<decltype(fn(std::size_t{0}))>;
  std::vector<R> results(count);
  const unsigned hw = std::thread::hardware_concurrency();
  const std::size_t workers = hw > 1 ? hw : 1;
  if (count < 256 || workers == 1) {
    for (std::size_t i = 0; i < count; ++i) results[i] = fn(i);
    return results;
  }

  const std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      const std::size_t begin = w * chunk;
      const std::size_t end = std::min(count, begin + chunk);
      try {
        for (std::size_t i = begin; i < end; ++i) results[i] = fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return results;
}

}  // namespace hmfree
