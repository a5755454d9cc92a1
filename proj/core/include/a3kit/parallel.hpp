#pragma once

#include <cstddef>
#include <functional>

namespace a3kit {

// Worker count: A3KIT_THREADS when set (clamped to [1, 256]), otherwise the
// hardware concurrency.
int thread_budget();

// Runs fn(0..count-1) across the thread budget. Iterations must be
// independent; the first exception is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

}  // namespace a3kit
