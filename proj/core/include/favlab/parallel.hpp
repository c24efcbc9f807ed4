#pragma once

#include <cstddef>
#include <functional>

namespace favlab {

/// Worker cap: FAVLAB_THREADS if set and positive, else hardware concurrency.
std::size_t worker_count();

/// Overrides the worker cap for the calling process (0 restores the default).
void set_worker_count(std::size_t workers);

/// Runs body(i) for i in [0, count) on up to worker_count() threads. Callers
/// write results into slot i, so the outcome never depends on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace favlab
