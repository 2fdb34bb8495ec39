#pragma once

#include <vector>

#include "common.hpp"

namespace fgmsc {

// Strictly positive start, entries uniform in [0.9/n, 1.1/n]. Multiplicative
// updates freeze zeros, so the initial support must be full.
SelfExpression init_w(int n, std::uint64_t seed);

// |X - X W|_F^2 + alpha |W - Z|_F^2 + |W|_1
double w_objective(const ViewMatrix& X, const SelfExpression& W, const AffinityGraph& Z,
                   double alpha);

struct WUpdate {
  SelfExpression W;
  int iterations = 0;
  std::vector<double> objective_trace;  // value after each multiplicative step
};

// Multiplicative rule W <- W .* 2(X'X + alpha Z) ./ (W X'X + X'X W + 2 alpha W + 1),
// iterated until the relative objective change drops below tol or inner_iters
// steps. Requires nonnegative X, W, Z.
WUpdate update_w(const ViewMatrix& X, const SelfExpression& W, const AffinityGraph& Z,
                 double alpha, int inner_iters, double tol);

// Same with X'X precomputed (it is constant across a whole run).
WUpdate update_w_with_gram(const ViewMatrix& X, const Matrix& gram, const SelfExpression& W,
                           const AffinityGraph& Z, double alpha, int inner_iters, double tol);

}  // namespace fgmsc
