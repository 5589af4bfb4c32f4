#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace puritylab {

/// Worker-thread cap: PURITYLAB_THREADS if set, hardware count otherwise.
inline std::size_t thread_budget() {
  if (const char* env = std::getenv("PURITYLAB_THREADS")) {
    const long v = std::atol(env);
    if (v >= 1) return static_cast<std::size_t>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

namespace detail {
inline bool& in_worker_flag() {
  thread_local bool flag = false;
  return flag;
}
}  // namespace detail

// Evaluates fn(0..count-1) and returns results in index order. Tasks must be
// pure functions of their index. Nested calls from inside a worker run
// serially, so determinism never depends on the schedule: slot i always holds
// fn(i) and reductions happen in index order on the caller side.
template <typename Fn>
auto parallel_map(std::size_t count, Fn&& fn)
    -> std::vector<decltype(fn(std::size_t{0}))> {
  using R = decltype(fn(std::size_t{0}));
  std::vector<R> out(count);
  if (count == 0) return out;

  const std::size_t workers =
      detail::in_worker_flag() ? 1 : std::min(thread_budget(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::atomic<bool> failed{false};
  auto run = [&] {
    detail::in_worker_flag() = true;
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) break;
      try {
        out[i] = fn(i);
      } catch (...) {
        if (!failed.exchange(true)) first_error = std::current_exception();
        break;
      }
    }
    detail::in_worker_flag() = false;
  };

  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

}  // namespace puritylab
