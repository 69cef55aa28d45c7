#pragma once

#include <cstddef>
#include <functional>

namespace cesaro {

/// Worker count from CESARO_THREADS, else the hardware concurrency.
unsigned default_parallelism();

/// Runs fn(i) for i < n on up to `threads` workers. The first exception
/// thrown by any task is rethrown after all workers have joined.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

} // namespace cesaro
