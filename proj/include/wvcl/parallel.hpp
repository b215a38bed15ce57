#pragma once

#include <cstddef>
#include <functional>

namespace wvcl {

// Worker count: hardware concurrency, capped by the WVCL_THREADS environment
// variable when it holds a positive integer.
std::size_t worker_count();

// Runs body(i) for i in [0, n). Iterations must write only to their own slots;
// results are then independent of the thread count. The first exception thrown
// by any iteration is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace wvcl
