#pragma once

#include <cstddef>
#include <functional>

namespace modelmult {

/// Number of worker threads for data-parallel sweeps. Read from the
/// MODELSPACE_THREADS environment variable (integer >= 1); defaults to the
/// hardware concurrency.
unsigned sweep_threads();

/// Calls `body(i)` for i in [0, n). Work is split into contiguous blocks;
/// callers write results into preallocated slots so output order never
/// depends on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace modelmult
