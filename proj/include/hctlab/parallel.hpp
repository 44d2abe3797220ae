#pragma once

#include <cstdint>
#include <functional>

namespace hctlab {

// Worker cap: HCTLAB_THREADS if set (minimum 1), else hardware concurrency.
int thread_cap();

// Runs body(0..n-1) on up to thread_cap() workers. Each index must write only
// its own output slot; with that discipline results do not depend on the
// worker count.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body);

}  // namespace hctlab
