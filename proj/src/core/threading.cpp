#include "threading.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fgmsc {

namespace {

int env_default_threads() {
  if (const char* env = std::getenv("FGMSC_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return std::min(v, 256);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : int(hw);
}

std::atomic<int> g_thread_override{0};

}  // namespace

int max_threads() {
  const int o = g_thread_override.load(std::memory_order_relaxed);
  if (o >= 1) return o;
  static const int env_value = env_default_threads();
  return env_value;
}

void set_max_threads(int n) {
  g_thread_override.store(n >= 1 ? std::min(n, 256) : 0, std::memory_order_relaxed);
}

void parallel_for(int begin, int end, const std::function<void(int)>& fn) {
  const int range = end - begin;
  if (range <= 0) return;
  const int workers = std::min(max_threads(), range);
  if (workers <= 1) {
    for (int i = begin; i < end; ++i) fn(i);
    return;
  }

  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const int chunk = (range + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const int lo = begin + w * chunk;
    const int hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      try {
        for (int i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> guard(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

void parallel_gemm(Matrix& C, const Matrix& A, const Matrix& B) {
  constexpr int kBlockCols = 128;  // fixed partition, independent of worker count
  C.resize(A.rows(), B.cols());
  const int cols = int(B.cols());
  const int blocks = (cols + kBlockCols - 1) / kBlockCols;
  if (blocks <= 1 || max_threads() <= 1) {
    C.noalias() = A * B;
    return;
  }
  parallel_for(0, blocks, [&](int b) {
    const int lo = b * kBlockCols;
    const int width = std::min(kBlockCols, cols - lo);
    C.middleCols(lo, width).noalias() = A * B.middleCols(lo, width);
  });
}

}  // namespace fgmsc
