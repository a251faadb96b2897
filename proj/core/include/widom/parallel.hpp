#pragma once

#include <cstddef>
#include <functional>

namespace widom {

/// Worker count: WIDOM_THREADS if set and positive, else hardware
/// concurrency (at least 1).
unsigned thread_count();

/// Calls body(i) for i in [0, count). Indices are split into contiguous
/// chunks, one per worker; callers write results into per-index slots so
/// the outcome does not depend on scheduling. Exceptions from any worker
/// are rethrown (lowest chunk first).
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace widom
