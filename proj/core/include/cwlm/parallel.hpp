#pragma once

#include <cstddef>
#include <functional>

namespace cwlm {

/// Number of worker threads used by grid evaluations. Defaults to the
/// hardware concurrency; the CWLM_THREADS environment variable caps it.
unsigned worker_count();

/// Splits [0, n) into contiguous chunks and runs fn(begin, end) for each,
/// possibly concurrently. fn must only write to disjoint per-index state;
/// results are then identical for any thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

} // namespace cwlm
