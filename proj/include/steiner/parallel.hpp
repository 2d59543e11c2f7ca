#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>

namespace steiner {

// Worker cap: min(hardware threads, STEINER_THREADS). Re-read on every call
// so tests can change the env between runs.
int worker_count();

// Runs body(i) for i in [0, count). Each index must write only its own state;
// scheduling is then irrelevant to the result.
void parallel_for(std::int64_t count,
                  const std::function<void(std::int64_t)>& body);

// Canonical reductions. parallel results are combined with pairwise_sum over
// a per-item buffer so the association never depends on the thread count.
double sum_sequential(const double* v, std::size_t n);
double pairwise_sum(std::span<const double> v);

} // namespace steiner
