#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace dqpt {

// Worker count resolution: explicit > DQPT_LAB_THREADS > hardware_concurrency.
// requested == 0 means "auto".
unsigned resolve_threads(unsigned requested);

// Static-chunked parallel map over [0, n). Each index is evaluated exactly
// once and writes only to its own slot, so results are identical for any
// worker count. Exceptions from workers are rethrown on the calling thread.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body);

// Pairwise (cascade) summation; fixed reduction order independent of thread
// count so quadrature results are reproducible bit-for-bit.
double pairwise_sum(std::span<const double> xs);

}  // namespace dqpt
