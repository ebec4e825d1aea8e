#pragma once

#include <cstddef>
#include <functional>

namespace stresskit {

/// Run fn(0..count-1) on up to `threads` workers over a static block
/// partition.  Every index owns its output slot, so scheduling cannot change
/// results; threads <= 1 degenerates to a plain loop.  The first exception
/// thrown by any worker is rethrown after all workers join.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);

} // namespace stresskit
