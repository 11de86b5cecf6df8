#include "pythlab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace pythlab {

unsigned thread_budget() {
  const char* env = std::getenv("PYTHLAB_THREADS");
  if (!env) return 1;
  try {
    long v = std::stol(env);
    return static_cast<unsigned>(std::clamp(v, 1L, 64L));
  } catch (...) {
    return 1;
  }
}

std::optional<std::size_t> find_first(std::size_t count, const std::function<bool(std::size_t)>& pred,
                                      unsigned threads) {
  if (threads <= 1 || count < 2 * threads) {
    for (std::size_t i = 0; i < count; ++i)
      if (pred(i)) return i;
    return std::nullopt;
  }
  std::atomic<std::size_t> best{count};
  // Workers take interleaved indices.
  auto worker = [&](unsigned t) {
    for (std::size_t i = t; i < count; i += threads) {
      if (i >= best.load(std::memory_order_relaxed)) return;
      if (pred(i)) {
        std::size_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
  for (auto& th : pool) th.join();
  if (best.load() == count) return std::nullopt;
  return best.load();
}

}  // namespace pythlab
