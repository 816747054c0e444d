#pragma once

#include <cstddef>
#include <functional>

namespace musa {

// Runs fn(0..count-1) across up to `jobs` threads (0 picks the hardware
// concurrency). Work items must not touch shared mutable state; the first
// exception thrown by any item is rethrown after all threads join.
void parallel_for(size_t count, int jobs, const std::function<void(size_t)>& fn);

}  // namespace musa
