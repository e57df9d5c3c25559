#pragma once

#include <cstddef>
#include <functional>

namespace respond {

/// Thread count from RESPOND_THREADS, else the hardware concurrency (>= 1).
int default_thread_count();

/// Calls body(i) for i in [0, n) on up to `threads` workers (0 = default).
/// Iterations are claimed dynamically; callers write results to slot i, so the
/// outcome is independent of scheduling. If several iterations throw, the
/// exception of the lowest index is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, int threads = 0);

}  // namespace respond
