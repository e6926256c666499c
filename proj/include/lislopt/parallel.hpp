#pragma once

#include <functional>

namespace lislopt {

// Worker count from LISLOPT_THREADS (default 1).
int thread_count();

// Runs fn(0..n-1), split over thread_count() workers. Each index is written by
// exactly one worker, so callers that store results by index stay
// deterministic.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace lislopt
