#pragma once

#include <cstddef>
#include <functional>

namespace relay_sinr {

/// Worker count: RELAY_SINR_THREADS if set and positive, else the hardware
/// concurrency (at least 1).
unsigned worker_count();

/// Splits [0, n) into contiguous chunks and runs body(begin, end) on up to
/// `workers` threads. Exceptions from workers are rethrown on the caller.
void parallel_for(std::size_t n, unsigned workers, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace relay_sinr
