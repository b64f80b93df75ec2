#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace xlayer {

/// Number of worker threads to use when the caller passes 0.
inline unsigned default_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Runs `body(begin, end)` over fixed-size blocks of [0, count) on `threads`
/// workers and folds the per-block results with `merge` in block order.
///
/// Block boundaries do not depend on the thread count, so any reduction
/// (including floating-point sums) is bit-identical for every `threads`.
template <class Acc, class Body, class Merge>
Acc parallel_blocks(std::size_t count, unsigned threads, std::size_t block, Body&& body, Merge&& merge, Acc init = {}) {
  if (count == 0) return init;
  block = std::max<std::size_t>(block, 1);
  const std::size_t blocks = (count + block - 1) / block;
  std::vector<Acc> partial(blocks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < blocks; i = next++) {
      try {
        partial[i] = body(i * block, std::min(count, (i + 1) * block));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  if (threads == 0) threads = default_threads();
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, blocks));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  Acc acc = std::move(init);
  for (auto& p : partial) merge(acc, p);
  return acc;
}

/// Evaluates `fn(i)` for i in [0, count) in parallel, results in index order.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t count, unsigned threads, Fn&& fn) {
  std::vector<T> out(count);
  parallel_blocks<int>(
      count, threads, 1,
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) out[i] = fn(i);
        return 0;
      },
      [](int&, int) {});
  return out;
}

}  // namespace xlayer
