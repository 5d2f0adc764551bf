#pragma once

#include <cstddef>
#include <functional>

namespace ebr {

/// Worker count: EBR_SIM_THREADS when set and positive, otherwise the
/// hardware concurrency (0 means auto).
std::size_t worker_count();

/// Calls fn(i) for i in [0, count) on up to worker_count() threads. Results
/// must be written to per-index slots; the first exception thrown is
/// rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)> &fn);

}  // namespace ebr
