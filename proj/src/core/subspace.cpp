#include "subspace.hpp"

#include <cmath>

#include "threading.hpp"

namespace fgmsc {

SelfExpression init_w(int n, std::uint64_t seed) {
  if (n < 1) raise(ErrorKind::invalid_argument, "init_w: n must be >= 1");
  Rng rng(seed);
  SelfExpression W(n, n);
  const double lo = 0.9 / n;
  const double hi = 1.1 / n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) W(i, j) = rng.uniform(lo, hi);
  return W;
}

double w_objective(const ViewMatrix& X, const SelfExpression& W, const AffinityGraph& Z,
                   double alpha) {
  if (X.cols() != W.rows() || W.rows() != W.cols() || W.rows() != Z.rows() ||
      Z.rows() != Z.cols()) {
    raise(ErrorKind::invalid_argument, "w_objective: dimension mismatch");
  }
  Matrix reconstruction;
  parallel_gemm(reconstruction, X, W);
  const double fit = (X - reconstruction).squaredNorm();
  return fit + alpha * (W - Z).squaredNorm() + W.cwiseAbs().sum();
}

WUpdate update_w_with_gram(const ViewMatrix& X, const Matrix& gram, const SelfExpression& W0,
                           const AffinityGraph& Z, double alpha, int inner_iters, double tol) {
  if (!(alpha > 0.0)) raise(ErrorKind::invalid_argument, "update_w: alpha must be > 0");
  if (inner_iters < 1) raise(ErrorKind::invalid_argument, "update_w: inner_iters must be >= 1");
  if (X.minCoeff() < 0.0 || W0.minCoeff() < 0.0 || Z.minCoeff() < 0.0) {
    raise(ErrorKind::invalid_argument,
          "update_w: multiplicative rule requires nonnegative X, W, Z");
  }

  const Matrix numerator = 2.0 * (gram + alpha * Z);  // constant within the subproblem
  WUpdate result;
  result.W = W0;
  Matrix wk, kw;
  double previous = w_objective(X, result.W, Z, alpha);
  for (int it = 0; it < inner_iters; ++it) {
    parallel_gemm(wk, result.W, gram);
    parallel_gemm(kw, gram, result.W);
    const Matrix denominator =
        (wk + kw + 2.0 * alpha * result.W).array() + 1.0;  // P + 1, as derived
    result.W.array() *= numerator.array() / denominator.array().max(1e-12);
    ++result.iterations;
    const double current = w_objective(X, result.W, Z, alpha);
    result.objective_trace.push_back(current);
    if (std::abs(previous - current) < tol * std::max(std::abs(previous), 1e-30)) break;
    previous = current;
  }
  return result;
}

WUpdate update_w(const ViewMatrix& X, const SelfExpression& W, const AffinityGraph& Z,
                 double alpha, int inner_iters, double tol) {
  Matrix gram;
  parallel_gemm(gram, X.transpose(), X);
  return update_w_with_gram(X, gram, W, Z, alpha, inner_iters, tol);
}

}  // namespace fgmsc
