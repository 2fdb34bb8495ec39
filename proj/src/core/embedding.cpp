#include "embedding.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include <lapacke.h>

#include "threading.hpp"

extern "C" void openblas_set_num_threads(int);

namespace fgmsc {

namespace {

// The LAPACK backend must not spawn its own workers: results have to be
// identical whatever FGMSC_THREADS says.
void pin_lapack_threads() {
  static std::once_flag flag;
  std::call_once(flag, [] { openblas_set_num_threads(1); });
}

struct Contingency {
  Matrix counts;  // k_pred x k_true
  Vector pred_sizes, true_sizes;
  int n = 0;
};

Contingency contingency_table(const std::vector<int>& pred, const std::vector<int>& truth) {
  if (pred.size() != truth.size()) {
    raise(ErrorKind::invalid_argument, "metrics: label vectors have different lengths");
  }
  if (pred.empty()) raise(ErrorKind::invalid_argument, "metrics: empty label vectors");
  std::map<int, int> pred_ids, true_ids;
  for (int v : pred) pred_ids.emplace(v, 0);
  for (int v : truth) true_ids.emplace(v, 0);
  int next = 0;
  for (auto& [value, id] : pred_ids) id = next++;
  next = 0;
  for (auto& [value, id] : true_ids) id = next++;

  Contingency table;
  table.n = int(pred.size());
  table.counts = Matrix::Zero(int(pred_ids.size()), int(true_ids.size()));
  for (std::size_t i = 0; i < pred.size(); ++i) {
    table.counts(pred_ids[pred[i]], true_ids[truth[i]]) += 1.0;
  }
  table.pred_sizes = table.counts.rowwise().sum();
  table.true_sizes = table.counts.colwise().sum();
  return table;
}

// Hungarian method (potentials form) for a square min-cost assignment.
// Returns the minimal total cost.
double hungarian_min_cost(const Matrix& cost) {
  const int n = int(cost.rows());
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> match(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<double> min_v(n + 1, std::numeric_limits<double>::infinity());
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = match[j0];
      double delta = std::numeric_limits<double>::infinity();
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < min_v[j]) {
          min_v[j] = cur;
          way[j] = j0;
        }
        if (min_v[j] < delta) {
          delta = min_v[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          min_v[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0);
  }
  double total = 0.0;
  for (int j = 1; j <= n; ++j)
    if (match[j]) total += cost(match[j] - 1, j - 1);
  return total;
}

double comb2(double x) { return x * (x - 1.0) / 2.0; }

struct Restart {
  std::vector<int> labels;
  double inertia = std::numeric_limits<double>::infinity();
  int iterations = 0;
  std::vector<double> inertia_trace;
};

Restart lloyd_restart(const Matrix& F, int c, std::uint64_t seed) {
  const int n = int(F.rows());
  Rng rng(seed);
  Restart out;

  // k-means++ seeding
  std::vector<int> centers_idx;
  centers_idx.push_back(rng.uniform_int(0, n - 1));
  Vector dist2 = (F.rowwise() - F.row(centers_idx[0])).rowwise().squaredNorm();
  while (int(centers_idx.size()) < c) {
    const double total = dist2.sum();
    int chosen = -1;
    if (total > 0.0) {
      double target = rng.uniform01() * total;
      for (int i = 0; i < n; ++i) {
        target -= dist2[i];
        if (target <= 0.0) {
          chosen = i;
          break;
        }
      }
      if (chosen < 0) chosen = n - 1;
    } else {
      // all remaining points coincide with a center; take the first unused index
      std::vector<bool> used(n, false);
      for (int idx : centers_idx) used[idx] = true;
      chosen = 0;
      while (chosen < n - 1 && used[chosen]) ++chosen;
    }
    centers_idx.push_back(chosen);
    dist2 = dist2.cwiseMin((F.rowwise() - F.row(chosen)).rowwise().squaredNorm());
  }
  Matrix centers(c, F.cols());
  for (int k = 0; k < c; ++k) centers.row(k) = F.row(centers_idx[k]);

  out.labels.assign(n, 0);
  std::vector<int> counts(c, 0);
  double previous = std::numeric_limits<double>::infinity();
  constexpr int kMaxIterations = 300;
  for (int it = 0; it < kMaxIterations; ++it) {
    double inertia = 0.0;
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d = (F.row(i) - centers.row(0)).squaredNorm();
      for (int k = 1; k < c; ++k) {
        const double d = (F.row(i) - centers.row(k)).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = k;
        }
      }
      out.labels[i] = best;
      inertia += best_d;
    }
    out.inertia = inertia;
    out.inertia_trace.push_back(inertia);
    out.iterations = it + 1;

    centers.setZero();
    std::fill(counts.begin(), counts.end(), 0);
    for (int i = 0; i < n; ++i) {
      centers.row(out.labels[i]) += F.row(i);
      ++counts[out.labels[i]];
    }
    for (int k = 0; k < c; ++k) {
      if (counts[k] > 0) centers.row(k) /= double(counts[k]);
    }
    std::vector<bool> reseated(n, false);
    for (int k = 0; k < c; ++k) {
      if (counts[k] > 0) continue;
      // reseat an empty cluster at the point farthest from its own center
      int far = -1;
      double far_d = -1.0;
      for (int i = 0; i < n; ++i) {
        if (reseated[i] || counts[out.labels[i]] == 0) continue;
        const double d = (F.row(i) - centers.row(out.labels[i])).squaredNorm();
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      if (far < 0) far = 0;
      centers.row(k) = F.row(far);
      reseated[far] = true;
    }
    if (std::abs(previous - inertia) <= 1e-7 * std::max(previous, 1e-30)) break;
    previous = inertia;
  }
  return out;
}

}  // namespace

LaplacianMatrix laplacian(const AffinityGraph& G) {
  if (!G.allFinite()) raise(ErrorKind::invalid_argument, "laplacian: non-finite input");
  if (G.rows() != G.cols()) raise(ErrorKind::invalid_argument, "laplacian: matrix must be square");
  LaplacianMatrix lap;
  const Matrix S = 0.5 * (G + G.transpose());
  lap.degrees = S.rowwise().sum();
  lap.L = -S;
  lap.L.diagonal() += lap.degrees;
  return lap;
}

Embedding spectral_embedding(const LaplacianMatrix& lap, int c) {
  const int n = int(lap.L.rows());
  if (c < 1 || c > n) {
    raise(ErrorKind::invalid_argument,
          "spectral_embedding: c must be in [1, n], got " + std::to_string(c));
  }
  if (!lap.L.allFinite()) raise(ErrorKind::invalid_argument, "spectral_embedding: non-finite input");
  pin_lapack_threads();

  Matrix work = lap.L;  // dsyevr overwrites its input
  Embedding embedding;
  embedding.F.resize(n, c);
  embedding.eigenvalues.resize(n);  // dsyevr wants room for n values
  std::vector<lapack_int> isuppz(std::size_t(2) * std::max(1, c));
  lapack_int found = 0;
  const lapack_int info = LAPACKE_dsyevr(
      LAPACK_COL_MAJOR, 'V', 'I', 'L', n, work.data(), n, 0.0, 0.0, 1, c, 0.0, &found,
      embedding.eigenvalues.data(), embedding.F.data(), n, isuppz.data());
  if (info != 0 || found != c) {
    raise(ErrorKind::numeric, "spectral_embedding: eigensolver failed (info " +
                                  std::to_string(info) + ", found " + std::to_string(found) +
                                  " of " + std::to_string(c) + ")");
  }
  embedding.eigenvalues.conservativeResize(c);

  for (int k = 0; k < c; ++k) {
    int arg = 0;
    double best = -1.0;
    for (int i = 0; i < n; ++i) {
      const double a = std::abs(embedding.F(i, k));
      if (a > best) {
        best = a;
        arg = i;
      }
    }
    if (embedding.F(arg, k) < 0.0) embedding.F.col(k) = -embedding.F.col(k);
  }
  return embedding;
}

KMeansResult kmeans(const Matrix& F, int c, std::uint64_t seed, int restarts) {
  const int n = int(F.rows());
  if (c < 1) raise(ErrorKind::invalid_argument, "kmeans: c must be >= 1");
  if (c > n) raise(ErrorKind::invalid_argument, "kmeans: c exceeds the number of samples");
  if (restarts < 1) raise(ErrorKind::invalid_argument, "kmeans: restarts must be >= 1");

  std::vector<Restart> runs(restarts);
  parallel_for(0, restarts, [&](int r) { runs[r] = lloyd_restart(F, c, derive_seed(seed, r)); });

  int best = 0;
  for (int r = 1; r < restarts; ++r) {
    if (runs[r].inertia < runs[best].inertia) best = r;
  }
  KMeansResult result;
  result.labels = std::move(runs[best].labels);
  result.inertia = runs[best].inertia;
  result.iterations = runs[best].iterations;
  result.inertia_trace = std::move(runs[best].inertia_trace);
  return result;
}

double clustering_accuracy(const std::vector<int>& pred, const std::vector<int>& truth) {
  const Contingency table = contingency_table(pred, truth);
  const int k = int(std::max(table.counts.rows(), table.counts.cols()));
  Matrix cost = Matrix::Zero(k, k);
  const double top = table.counts.maxCoeff();
  for (int i = 0; i < table.counts.rows(); ++i)
    for (int j = 0; j < table.counts.cols(); ++j) cost(i, j) = top - table.counts(i, j);
  for (int i = int(table.counts.rows()); i < k; ++i) cost.row(i).setConstant(top);
  for (int j = int(table.counts.cols()); j < k; ++j) cost.col(j).setConstant(top);
  const double matched = double(k) * top - hungarian_min_cost(cost);
  return matched / double(table.n);
}

double normalized_mutual_info(const std::vector<int>& pred, const std::vector<int>& truth) {
  const Contingency table = contingency_table(pred, truth);
  const double n = table.n;
  double h_pred = 0.0, h_true = 0.0, mi = 0.0;
  for (int i = 0; i < table.pred_sizes.size(); ++i) {
    const double p = table.pred_sizes[i] / n;
    if (p > 0.0) h_pred -= p * std::log(p);
  }
  for (int j = 0; j < table.true_sizes.size(); ++j) {
    const double p = table.true_sizes[j] / n;
    if (p > 0.0) h_true -= p * std::log(p);
  }
  for (int i = 0; i < table.counts.rows(); ++i) {
    for (int j = 0; j < table.counts.cols(); ++j) {
      const double nij = table.counts(i, j);
      if (nij > 0.0) {
        mi += nij / n * std::log(n * nij / (table.pred_sizes[i] * table.true_sizes[j]));
      }
    }
  }
  const double denom = std::max(h_pred, h_true);
  if (denom <= 0.0) return 1.0;  // both partitions constant, hence identical
  return std::clamp(mi / denom, 0.0, 1.0);
}

double adjusted_rand_index(const std::vector<int>& pred, const std::vector<int>& truth) {
  const Contingency table = contingency_table(pred, truth);
  double sum_cells = 0.0, sum_pred = 0.0, sum_true = 0.0;
  for (int i = 0; i < table.counts.rows(); ++i)
    for (int j = 0; j < table.counts.cols(); ++j) sum_cells += comb2(table.counts(i, j));
  for (int i = 0; i < table.pred_sizes.size(); ++i) sum_pred += comb2(table.pred_sizes[i]);
  for (int j = 0; j < table.true_sizes.size(); ++j) sum_true += comb2(table.true_sizes[j]);
  const double pairs = comb2(double(table.n));
  const double expected = sum_pred * sum_true / pairs;
  const double maximum = 0.5 * (sum_pred + sum_true);
  if (maximum - expected == 0.0) {
    return sum_cells - expected == 0.0 ? 1.0 : 0.0;
  }
  return (sum_cells - expected) / (maximum - expected);
}

}  // namespace fgmsc
