#pragma once

#include <cstddef>
#include <functional>

namespace stablegap {

/// Worker count: hardware concurrency, capped by STABLEGAP_THREADS when set.
unsigned worker_count();

/// Runs body(i) for i in [0, n) across worker_count() threads. Tasks are
/// handed out dynamically; callers write into slot i and reduce afterwards in
/// index order, which keeps results independent of scheduling. The first
/// exception thrown by any task is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace stablegap
