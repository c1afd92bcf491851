#pragma once

#include <cstddef>
#include <functional>

namespace svo {

// Number of workers: SVO_GAMES_THREADS when set to a positive integer,
// otherwise std::thread::hardware_concurrency() (at least 1).
unsigned worker_count();

/// Runs body(i) for i in [0, n). Indices are handed out dynamically; the
/// first exception thrown by any body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace svo
