#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace fgmsc {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Role aliases. Invariants are established by the producing operations:
//   ViewMatrix      d_v x n, features by samples
//   AffinityGraph   n x n, nonnegative, rows sum to 1
//   SelfExpression  n x n, nonnegative
//   CrossViewSlice  t x n, row v = row i of graph v
//   WeightMatrix    t x n, every column on the probability simplex
using ViewMatrix = Matrix;
using AffinityGraph = Matrix;
using SelfExpression = Matrix;
using CrossViewSlice = Matrix;
using WeightMatrix = Matrix;

enum class ErrorKind {
  invalid_argument,
  io,
  parse,
  numeric,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
  throw Error(kind, message);
}

// Seeded RNG with hand-mapped distributions so that output is identical
// across standard library implementations (std::*_distribution is not
// portable across toolchains).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // [0, 1)
  double uniform01() { return double(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // [lo, hi] inclusive
  int uniform_int(int lo, int hi) {
    const auto span = std::uint64_t(hi - lo) + 1;
    return lo + int(next_u64() % span);
  }

  // Box-Muller; draws two uniforms per call, no cached spare.
  double normal() {
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  std::uint64_t state_;
};

// Independent child stream for (seed, index), used for per-view and
// per-restart RNGs so parallel order never matters.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  Rng r(seed ^ (0xD1B54A32D192ED03ull * (index + 1)));
  r.next_u64();
  return r.next_u64();
}

}  // namespace fgmsc
