#ifndef SCATTER_PARALLEL_HPP
#define SCATTER_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace scatter {

// Worker count for data-parallel loops: SCATTER_THREADS when set,
// hardware concurrency otherwise, at least 1.
std::size_t worker_count();

// Runs fn(i) for i in [0, n) on a bounded pool of std::thread workers.
// fn must be safe to call concurrently for distinct i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace scatter

#endif
