#pragma once

#include <cstddef>
#include <functional>

namespace hcube {

/// Worker count: HCUBE_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
int thread_count();

/// Runs body(i) for i in [0, count), spread over thread_count() workers.
/// Results must be written to per-index slots; the first exception thrown
/// by any body is rethrown after all workers finish.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace hcube
