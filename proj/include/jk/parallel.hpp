#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace jk {

/// Process-wide worker cap (CLI --threads). Defaults to 1: fully sequential.
int thread_count();
void set_thread_count(int n);

/// Maps f over [0, n) with up to thread_count() workers, then returns results
/// in index order, so any subsequent reduction is deterministic.
template <typename T>
std::vector<T> parallel_map(size_t n, const std::function<T(size_t)>& f) {
  std::vector<T> out(n);
  int workers = thread_count();
  if (workers <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::atomic<size_t> next{0};
  auto body = [&]() {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= n) return;
      out[i] = f(i);
    }
  };
  std::vector<std::thread> pool;
  int k = static_cast<int>(n < static_cast<size_t>(workers) ? n : workers);
  pool.reserve(k);
  for (int i = 0; i < k; ++i) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace jk
