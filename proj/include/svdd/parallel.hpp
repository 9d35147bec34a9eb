#pragma once

#include <cstddef>
#include <functional>

namespace svdd {

/// Worker count: SVDD_NUM_THREADS if set and positive, else the hardware count.
std::size_t thread_count() noexcept;

/// Runs body(i) for i in [0, n) over up to thread_count() threads. Each index
/// must write only its own output slot, which keeps results deterministic.
/// The first exception thrown by any body is rethrown after all threads join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace svdd
