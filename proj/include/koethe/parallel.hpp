#pragma once
// Deterministic index-space parallelism. Results land in preallocated slots,
// so the outcome is independent of the thread count. KOETHE_LAB_THREADS caps
// the pool (unset or 0 means hardware concurrency).

#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace koethe {

inline unsigned thread_cap() {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("KOETHE_LAB_THREADS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  return hw;
}

// fn(i) is called exactly once for each i in [0, count); exceptions propagate.
inline void parallel_for_index(std::size_t count, const std::function<void(std::size_t)>& fn) {
  unsigned threads = thread_cap();
  if (threads <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  if (threads > count) threads = static_cast<unsigned>(count);
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      try {
        for (std::size_t i = t; i < count; i += threads) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

} // namespace koethe
