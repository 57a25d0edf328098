#include "old/parallel.hpp"

#include <algorithm>
#include <thread>
#include <vector>

namespace old {

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_blocks(std::size_t count, int threads,
                     const std::function<void(std::size_t, std::size_t)>& fn) {
  threads = resolve_threads(threads);
  if (count == 0) return;
  std::size_t t = std::min<std::size_t>(static_cast<std::size_t>(threads), count);
  if (t <= 1) {
    fn(0, count);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(t);
  for (std::size_t i = 0; i < t; ++i) {
    std::size_t begin = count * i / t;
    std::size_t end = count * (i + 1) / t;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace old
