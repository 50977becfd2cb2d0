#pragma once

#include <cstddef>
#include <functional>

namespace randmeas {

/// Runs fn(i) for every i in [0, count) on up to `threads` workers.
/// fn must write results to per-index slots; any aggregation happens after
/// the call, in index order, so results do not depend on the worker count.
/// The first exception thrown by a worker is rethrown on the caller.
void parallel_for(std::size_t count, unsigned threads,
                  const std::function<void(std::size_t)>& fn);

unsigned default_thread_count();

}  // namespace randmeas
