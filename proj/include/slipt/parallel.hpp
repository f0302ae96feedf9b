#pragma once

#include <cstddef>
#include <functional>

namespace slipt {

/// Worker threads for parallel loops: SLIPT_WORKERS when set to a positive
/// integer, otherwise the hardware concurrency.
unsigned worker_count();

/// Calls fn(i) for i in [0, count) on up to `workers` threads. Indices are
/// handed out dynamically; callers write results to per-index slots. If any
/// call throws, the exception of the lowest failing index is rethrown after
/// all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                  unsigned workers = worker_count());

}  // namespace slipt
