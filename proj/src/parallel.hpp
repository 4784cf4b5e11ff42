#pragma once

#include <cstddef>
#include <functional>

namespace lagprop::detail {

/// Worker count: LAGPROP_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned thread_count();

/// Runs body(i) for i in [0, n). Each index is handled by exactly one thread
/// and results must be written to index-owned slots, so the outcome does not
/// depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace lagprop::detail
