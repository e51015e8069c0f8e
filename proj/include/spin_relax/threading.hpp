#ifndef SPIN_RELAX_THREADING_HPP
#define SPIN_RELAX_THREADING_HPP

#include <cstddef>
#include <functional>

namespace spinrelax {

// Resolves a requested thread count: n > 0 is taken as-is, n == 0 consults
// the SPIN_RELAX_THREADS environment variable and then hardware concurrency.
int resolve_threads(int requested);

// Runs fn(begin, end) on contiguous chunks of [0, n), one chunk per worker.
// Chunks are disjoint, so writers to per-index slots need no synchronization
// and results do not depend on the schedule.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace spinrelax

#endif
