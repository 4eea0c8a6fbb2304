#pragma once

#include <cstddef>
#include <functional>

namespace buildwalk {

/// Worker count: BUILDWALK_THREADS if set and positive, else the hardware
/// concurrency (at least 1).
unsigned default_thread_count();

/// Calls body(i) for i in [0, n), spreading indices over `threads` workers in
/// contiguous blocks. Callers write results into per-index slots and reduce
/// them in index order afterwards, so results never depend on the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, unsigned threads = 0);

}  // namespace buildwalk
