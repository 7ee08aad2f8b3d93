#ifndef CLOCUS_PARALLEL_HPP
#define CLOCUS_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace clocus {

// Worker cap: CLOCUS_THREADS when set (values below 1 clamp to 1), the
// hardware concurrency otherwise.
inline int workerLimit() {
  if (const char* env = std::getenv("CLOCUS_THREADS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (...) {
      return 1;
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, count), fanning out over at most workerLimit()
// threads.  fn must be safe to call concurrently for distinct i.  The first
// exception thrown by any worker is rethrown on the calling thread.
inline void parallelFor(int count, const std::function<void(int)>& fn) {
  const int workers = std::min(workerLimit(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex errorLock;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      while (!failed.load(std::memory_order_relaxed)) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::scoped_lock lock(errorLock);
          if (!error) error = std::current_exception();
          failed.store(true, std::memory_order_relaxed);
          return;
        }
      }
    });
  for (std::thread& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace clocus

#endif  // CLOCUS_PARALLEL_HPP
