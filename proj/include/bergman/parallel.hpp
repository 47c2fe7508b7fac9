#pragma once

#include <functional>

namespace bergman {

// Job count resolution: explicit argument > BERGMAN_LAB_JOBS > hardware.
int resolve_jobs(int requested = 0);

// Runs body(i) for i in [0, n) on up to `jobs` threads. Each index is
// processed exactly once; bodies must only write to their own slot so results
// are independent of the job count. Exceptions are rethrown on the caller.
void parallel_for(int n, int jobs, const std::function<void(int)>& body);

}  // namespace bergman
