#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace pbounds {

/// Worker count used when a caller passes 0. Initially the hardware
/// concurrency (at least 1).
unsigned default_threads();
void set_default_threads(unsigned n);

/// Runs body(i) for i in [0, n) on up to `threads` workers (0 = default).
/// Each index is processed exactly once and callers write results to slot i,
/// so the outcome does not depend on scheduling. If any call throws, the
/// exception from the lowest failing index is rethrown after all workers stop.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

}  // namespace pbounds
