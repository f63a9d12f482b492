#ifndef KHO_PARALLEL_HPP
#define KHO_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace kho {

// Number of workers actually used for a requested job count (0 = all
// available cores).
int resolve_jobs(int jobs);

// Runs fn(i) for i in [0, count) on up to `jobs` threads. Work items
// must be independent; results must not depend on the thread that ran
// them. Exceptions from fn are rethrown on the calling thread.
void parallel_for(std::size_t count, int jobs,
                  const std::function<void(std::size_t)>& fn);

}  // namespace kho

#endif
