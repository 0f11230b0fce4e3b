#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace definetti {

/// Worker count from DEFINETTI_THREADS, else hardware concurrency (>= 1).
int thread_count();

/// Runs body(i) for i in [0, count) on up to `threads` workers. Each index is
/// visited exactly once; the first exception thrown is rethrown after all
/// workers finish.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace definetti
