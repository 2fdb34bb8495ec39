#pragma once

#include <functional>

#include "common.hpp"

namespace fgmsc {

// Worker cap: FGMSC_THREADS env var if set, else hardware concurrency.
// Thread count never changes results: every parallel construct in this
// library writes disjoint output slots and partitions work independently
// of the number of workers.
int max_threads();
void set_max_threads(int n);  // n <= 0 restores the environment default

// Runs fn(i) for i in [begin, end), split into contiguous chunks.
void parallel_for(int begin, int end, const std::function<void(int)>& fn);

// C = A * B, column blocks of fixed width computed independently so the
// result is bit-identical for any worker count.
void parallel_gemm(Matrix& C, const Matrix& A, const Matrix& B);

}  // namespace fgmsc
