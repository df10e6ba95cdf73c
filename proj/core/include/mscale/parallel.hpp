#pragma once

#include <cstddef>
#include <functional>

namespace mscale {

/// Worker count for parallel sections. Reads MSCALE_THREADS; 0 or unset means
/// std::thread::hardware_concurrency().
unsigned thread_count() noexcept;

/// Runs fn(i) for i in [0, count). Work is distributed over up to
/// thread_count() threads; calls made from inside a worker run serially, so
/// nested use does not oversubscribe. Callers write results into per-index
/// slots, which keeps output independent of scheduling. The first exception
/// thrown by any fn is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace mscale
