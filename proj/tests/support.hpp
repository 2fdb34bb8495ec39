#pragma once

// Shared helpers and independent oracles for the test suites. Everything in
// here must stay decoupled from the library's solve paths: grid searches,
// exhaustive enumeration, finite differences, and naive re-implementations
// only.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include <unistd.h>

#include "core/common.hpp"

namespace test_support {

using fgmsc::Matrix;
using fgmsc::Vector;

inline std::filesystem::path temp_dir(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() /
                   ("fgmsc_test_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  return dir;
}

// --- random instances -------------------------------------------------------

inline Vector random_simplex_vector(fgmsc::Rng& rng, int t) {
  Vector v(t);
  for (int i = 0; i < t; ++i) v[i] = rng.uniform(0.05, 1.0);
  return v / v.sum();
}

inline Matrix random_row_stochastic(fgmsc::Rng& rng, int rows, int cols) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = rng.uniform(0.0, 1.0);
    m.row(i) /= m.row(i).sum();
  }
  return m;
}

inline Matrix random_matrix(fgmsc::Rng& rng, int rows, int cols, double lo, double hi) {
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.uniform(lo, hi);
  return m;
}

// Squared distances of random points: a valid embedding-distance matrix.
inline Matrix random_distance_matrix(fgmsc::Rng& rng, int n, int dim) {
  const Matrix points = random_matrix(rng, n, dim, -1.0, 1.0);
  Matrix h(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) h(i, j) = (points.row(i) - points.row(j)).squaredNorm();
  return h;
}

// --- exact simplex projection (oracle building block) -----------------------

// Euclidean projection of v onto {g >= 0, sum g = 1}, by the sort-based
// closed form.
inline Vector project_simplex(const Vector& v) {
  const int n = int(v.size());
  std::vector<double> sorted(v.data(), v.data() + n);
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  double running = 0.0, tau = 0.0;
  int rho = 0;
  for (int k = 0; k < n; ++k) {
    running += sorted[k];
    const double candidate = (1.0 - running) / (k + 1);
    if (sorted[k] + candidate > 0.0) {
      rho = k + 1;
      tau = candidate;
    }
  }
  Vector g(n);
  for (int i = 0; i < n; ++i) g[i] = std::max(0.0, v[i] + tau);
  return g;
}

// --- m-sparse projection oracle ---------------------------------------------

// argmin over supports S (|S| = m, S excludes self) of |g + q/scale|^2 with
// g simplex-supported on S: exhaustive enumeration, exact projection per
// support. Off-support coordinates contribute (q_j/scale)^2.
inline Vector sparse_projection_oracle(const Vector& q, int m, double scale,
                                       std::optional<int> self_index) {
  const int n = int(q.size());
  std::vector<int> candidates;
  for (int j = 0; j < n; ++j)
    if (!self_index || *self_index != j) candidates.push_back(j);
  m = std::min(m, int(candidates.size()));

  Vector best;
  double best_objective = std::numeric_limits<double>::infinity();
  std::vector<int> support(m);
  const std::function<void(int, int)> visit = [&](int start, int chosen) {
    if (chosen == m) {
      Vector v(m);
      for (int k = 0; k < m; ++k) v[k] = -q[support[k]] / scale;
      const Vector g = project_simplex(v);
      double objective = 0.0;
      for (int k = 0; k < m; ++k) objective += (g[k] + q[support[k]] / scale) * (g[k] + q[support[k]] / scale);
      for (int j : candidates) {
        if (std::find(support.begin(), support.end(), j) == support.end()) {
          objective += (q[j] / scale) * (q[j] / scale);
        }
      }
      if (objective < best_objective - 1e-15) {
        best_objective = objective;
        best = Vector::Zero(n);
        for (int k = 0; k < m; ++k) best[support[k]] = g[k];
      }
      return;
    }
    for (int idx = start; idx < int(candidates.size()); ++idx) {
      support[chosen] = candidates[idx];
      visit(idx + 1, chosen + 1);
    }
  };
  visit(0, 0);
  return best;
}

// --- simplex grid search oracles --------------------------------------------

// Minimizes fn over the t-simplex sampled at the given resolution (steps of
// 1/resolution). Returns the best grid point.
inline Vector simplex_grid_argmin(int t, int resolution,
                                  const std::function<double(const Vector&)>& fn) {
  Vector best = Vector::Zero(t);
  double best_val = std::numeric_limits<double>::infinity();
  Vector point(t);
  const std::function<void(int, int)> visit = [&](int coord, int remaining) {
    if (coord == t - 1) {
      point[coord] = double(remaining) / resolution;
      const double val = fn(point);
      if (val < best_val) {
        best_val = val;
        best = point;
      }
      return;
    }
    for (int units = 0; units <= remaining; ++units) {
      point[coord] = double(units) / resolution;
      visit(coord + 1, remaining - units);
    }
  };
  visit(0, resolution);
  return best;
}

// --- finite differences ------------------------------------------------------

// Central-difference gradient of fn at X, elementwise.
inline Matrix finite_difference_gradient(const std::function<double(const Matrix&)>& fn,
                                         const Matrix& at, double step) {
  Matrix grad(at.rows(), at.cols());
  Matrix probe = at;
  for (int i = 0; i < at.rows(); ++i) {
    for (int j = 0; j < at.cols(); ++j) {
      probe(i, j) = at(i, j) + step;
      const double hi = fn(probe);
      probe(i, j) = at(i, j) - step;
      const double lo = fn(probe);
      probe(i, j) = at(i, j);
      grad(i, j) = (hi - lo) / (2.0 * step);
    }
  }
  return grad;
}

// --- metric oracles ----------------------------------------------------------

// Best-permutation accuracy by brute force; feasible for <= 8 clusters.
inline double accuracy_bruteforce(const std::vector<int>& pred, const std::vector<int>& truth) {
  std::vector<int> pred_values(pred), true_values(truth);
  std::sort(pred_values.begin(), pred_values.end());
  pred_values.erase(std::unique(pred_values.begin(), pred_values.end()), pred_values.end());
  std::sort(true_values.begin(), true_values.end());
  true_values.erase(std::unique(true_values.begin(), true_values.end()), true_values.end());

  // map prediction clusters onto truth clusters (or none) over all injections
  std::vector<int> target(std::max(pred_values.size(), true_values.size()));
  for (std::size_t i = 0; i < target.size(); ++i)
    target[i] = i < true_values.size() ? true_values[i] : std::numeric_limits<int>::min();
  std::sort(target.begin(), target.end());

  double best = 0.0;
  do {
    int agree = 0;
    for (std::size_t s = 0; s < pred.size(); ++s) {
      const auto at = std::find(pred_values.begin(), pred_values.end(), pred[s]);
      const std::size_t cluster = std::size_t(at - pred_values.begin());
      if (cluster < target.size() && target[cluster] == truth[s]) ++agree;
    }
    best = std::max(best, double(agree) / double(pred.size()));
  } while (std::next_permutation(target.begin(), target.end()));
  return best;
}

// Pairwise Rand statistics counted over all sample pairs.
inline double ari_bruteforce(const std::vector<int>& pred, const std::vector<int>& truth) {
  const int n = int(pred.size());
  double both = 0, pred_only = 0, truth_only = 0, neither = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool same_pred = pred[i] == pred[j];
      const bool same_true = truth[i] == truth[j];
      both += same_pred && same_true;
      pred_only += same_pred && !same_true;
      truth_only += !same_pred && same_true;
      neither += !same_pred && !same_true;
    }
  }
  const double pairs = both + pred_only + truth_only + neither;
  const double expected = (both + pred_only) * (both + truth_only) / pairs;
  const double maximum = 0.5 * ((both + pred_only) + (both + truth_only));
  if (maximum - expected == 0.0) return both - expected == 0.0 ? 1.0 : 0.0;
  return (both - expected) / (maximum - expected);
}

}  // namespace test_support
