#include "graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>

#include "threading.hpp"

namespace fgmsc {

SimplexRow sparse_simplex_row_detail(const Vector& q, int m, std::optional<int> self_index) {
  const int n = int(q.size());
  if (m < 1) raise(ErrorKind::invalid_argument, "sparse_simplex_row: m must be >= 1");

  std::vector<int> candidates;
  candidates.reserve(n);
  for (int j = 0; j < n; ++j) {
    if (self_index && *self_index == j) continue;
    if (std::isfinite(q[j])) candidates.push_back(j);
  }
  if (candidates.empty()) {
    raise(ErrorKind::invalid_argument, "sparse_simplex_row: no finite candidate entries");
  }
  std::sort(candidates.begin(), candidates.end(),
            [&](int a, int b) { return q[a] != q[b] ? q[a] < q[b] : a < b; });

  const int k = std::min(m, int(candidates.size()));
  double selected_sum = 0.0;
  for (int j = 0; j < k; ++j) selected_sum += q[candidates[j]];

  SimplexRow row;
  row.weights = Vector::Zero(n);

  double scale;  // denominator: row = projection of -q/scale onto the support simplex
  if (k < int(candidates.size())) {
    scale = double(k) * q[candidates[k]] - selected_sum;
  } else {
    // No (k+1)-th value; use twice the critical ridge so every candidate stays active.
    scale = 2.0 * (double(k) * q[candidates[k - 1]] - selected_sum);
  }
  const double spread = std::abs(q[candidates[k - 1]]) + std::abs(q[candidates[0]]);
  if (!(scale > 1e-12 * std::max(1.0, spread))) {
    for (int j = 0; j < k; ++j) row.weights[candidates[j]] = 1.0 / k;
    return row;
  }

  // q_virtual = (scale + sum of selected) / k; equals q_(k+1) in the regular case.
  const double q_virtual = (scale + selected_sum) / double(k);
  for (int j = 0; j < k; ++j) row.weights[candidates[j]] = (q_virtual - q[candidates[j]]) / scale;
  row.scale = scale;
  return row;
}

Vector sparse_simplex_row(const Vector& q, int m, std::optional<int> self_index) {
  return sparse_simplex_row_detail(q, m, self_index).weights;
}

AffinityGraph adaptive_neighbors_graph(const ViewMatrix& view, int k) {
  const int n = int(view.cols());
  if (n < 2) raise(ErrorKind::invalid_argument, "adaptive_neighbors_graph: need at least 2 samples");
  if (k < 1 || k > n - 1) {
    raise(ErrorKind::invalid_argument, "adaptive_neighbors_graph: k must be in [1, n-1], got " +
                                           std::to_string(k));
  }

  Matrix gram;
  parallel_gemm(gram, view.transpose(), view);
  const Vector sq = gram.diagonal();

  AffinityGraph graph(n, n);
  parallel_for(0, n, [&](int i) {
    Vector dist = (sq.array() + sq[i] - 2.0 * gram.col(i).array()).max(0.0);
    graph.row(i) = sparse_simplex_row(dist, k, i).transpose();
  });
  return graph;
}

AffinityGraph init_unified_graph(const std::vector<AffinityGraph>& graphs) {
  if (graphs.empty()) raise(ErrorKind::invalid_argument, "init_unified_graph: empty graph list");
  AffinityGraph mean = graphs.front();
  for (std::size_t v = 1; v < graphs.size(); ++v) {
    if (graphs[v].rows() != mean.rows() || graphs[v].cols() != mean.cols()) {
      raise(ErrorKind::invalid_argument, "init_unified_graph: graph size mismatch at view " +
                                             std::to_string(v));
    }
    mean += graphs[v];
  }
  mean /= double(graphs.size());
  return mean;
}

void write_graph_csv(const std::filesystem::path& path, const AffinityGraph& graph) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorKind::io, "cannot write file: " + path.string());
  char buf[32];
  for (Eigen::Index i = 0; i < graph.rows(); ++i) {
    for (Eigen::Index j = 0; j < graph.cols(); ++j) {
      if (j) out << ',';
      std::snprintf(buf, sizeof(buf), "%.17g", graph(i, j));
      out << buf;
    }
    out << '\n';
  }
}

void write_edge_list_csv(const std::filesystem::path& path, const AffinityGraph& graph) {
  std::ofstream out(path, std::ios::binary);
  if (!out) raise(ErrorKind::io, "cannot write file: " + path.string());
  out << "i,j,w\n";
  char buf[32];
  for (Eigen::Index i = 0; i < graph.rows(); ++i) {
    for (Eigen::Index j = 0; j < graph.cols(); ++j) {
      if (graph(i, j) > 0.0) {
        std::snprintf(buf, sizeof(buf), "%.17g", graph(i, j));
        out << i << ',' << j << ',' << buf << '\n';
      }
    }
  }
}

int count_components(const AffinityGraph& graph, double threshold) {
  const int n = int(graph.rows());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(graph(i, j)) > threshold || std::abs(graph(j, i)) > threshold) {
        parent[find(i)] = find(j);
      }
    }
  }
  int components = 0;
  for (int i = 0; i < n; ++i) components += find(i) == i;
  return components;
}

}  // namespace fgmsc
