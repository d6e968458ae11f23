#pragma once

#include <cstddef>
#include <functional>

namespace multlab {

// Worker count: MULTLAB_THREADS if set to a positive integer, otherwise the
// hardware concurrency (at least 1).
unsigned thread_count();

// Runs body(i) for i in [0, n) on up to thread_count() threads. Each index
// runs exactly once; callers write results by index so the outcome does not
// depend on scheduling. The first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace multlab
