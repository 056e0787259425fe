#pragma once

#include <cstddef>
#include <functional>

namespace conebell {

/// Worker count: `requested` if positive, else CONEBELL_THREADS, else the
/// hardware concurrency (at least 1).
int resolve_threads(int requested = 0);

/// Calls body(item) for every item in [0, count), handing items out in
/// increasing order to `threads` workers. Exceptions from a worker are
/// rethrown on the calling thread after all workers have stopped.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace conebell
