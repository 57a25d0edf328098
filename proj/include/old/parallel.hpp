#pragma once

#include <cstddef>
#include <functional>

namespace old {

// Resolve a --threads style request: values <= 0 mean machine parallelism.
int resolve_threads(int requested);

// Runs fn(begin, end) over contiguous blocks of [0, count). Block layout
// depends only on (count, threads); tasks must write disjoint slots so the
// result is independent of scheduling.
void parallel_blocks(std::size_t count, int threads,
                     const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace old
