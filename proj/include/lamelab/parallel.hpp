#pragma once

#include <cstddef>
#include <functional>

namespace lamelab {

/// Worker count used by parallel_for; 1 runs everything on the caller.
void set_thread_count(int n);
int thread_count();

/// Runs body(i) for i in [0, count). Each index is handled exactly once, so results
/// written to slot i are independent of the worker count. The first exception thrown
/// by any body is rethrown on the caller.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace lamelab
