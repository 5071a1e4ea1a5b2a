#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace topotess::detail {

/// Runs fn(i) for i in [0, count) on up to `threads` workers. If any call
/// throws, the exception of the lowest failing index is rethrown after all
/// workers finish, so failures are reported the same way for any thread count.
template <class Fn>
void parallel_for(std::size_t count, std::size_t threads, Fn&& fn) {
  std::vector<std::exception_ptr> errors(count);
  auto body = [&](std::size_t i) {
    try {
      fn(i);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };
  threads = std::max<std::size_t>(1, std::min(threads, count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) body(i);
      });
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

} // namespace topotess::detail
