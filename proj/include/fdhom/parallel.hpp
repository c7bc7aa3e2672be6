#pragma once

#include <cstddef>
#include <functional>

namespace fdhom {

// Resolve a thread-count knob: 0 means "use the hardware concurrency".
int resolve_threads(int requested);

// Run fn(i) for every i in [0, count). Work items must write only to their
// own per-index slots; how indices are partitioned across threads then never
// affects the result. The first exception thrown by any item is rethrown.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

}  // namespace fdhom
