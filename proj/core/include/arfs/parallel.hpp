#pragma once

#include <cstddef>
#include <functional>

namespace arfs {

/// Worker count used by parallel_for. 0 restores the default
/// (std::thread::hardware_concurrency()).
void set_thread_count(unsigned count);
unsigned thread_count();

/// Runs fn(i) for i in [0, count). Calls made from inside a running
/// parallel_for execute serially on the calling worker, so nested
/// parallelism (repeats -> refits -> trees) never oversubscribes.
/// The first exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

} // namespace arfs
