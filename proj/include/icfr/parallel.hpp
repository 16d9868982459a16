#pragma once

#include <functional>

namespace icfr {

/// Worker count used by every parallel region. 1 runs inline on the caller.
void set_thread_count(int n);
int thread_count();

// Splits [begin, end) into contiguous chunks, one per worker. Each index is visited
// exactly once and must only write state owned by that index, so results do not
// depend on the worker count.
void parallel_for(int begin, int end, const std::function<void(int)>& body);

}  // namespace icfr
