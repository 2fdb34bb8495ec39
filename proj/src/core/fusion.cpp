#include "fusion.hpp"

#include <cmath>

namespace fgmsc {

namespace {

void check_graph_list(const std::vector<Matrix>& graphs, const char* where) {
  if (graphs.empty()) raise(ErrorKind::invalid_argument, std::string(where) + ": empty list");
  const auto rows = graphs.front().rows();
  const auto cols = graphs.front().cols();
  for (std::size_t v = 0; v < graphs.size(); ++v) {
    if (graphs[v].rows() != rows || graphs[v].cols() != cols) {
      raise(ErrorKind::invalid_argument,
            std::string(where) + ": size mismatch at index " + std::to_string(v));
    }
  }
}

// Weights from a t x t Gram system: M^{-1} 1 / (1' M^{-1} 1), then simplex clip.
SimplexWeights simplex_weights_from_gram(Matrix M, double ridge, const char* where) {
  const int t = int(M.rows());
  if (ridge < 0.0) raise(ErrorKind::invalid_argument, std::string(where) + ": ridge must be >= 0");
  SimplexWeights result;
  if (t == 1) {
    result.weights = Vector::Ones(1);
    return result;
  }
  M.diagonal().array() += ridge;
  const Vector ones = Vector::Ones(t);
  const Vector u = M.ldlt().solve(ones);
  const double residual = (M * u - ones).cwiseAbs().maxCoeff();
  const double denominator = u.sum();
  if (!u.allFinite() || residual > 1e-8 * std::max(1.0, u.cwiseAbs().maxCoeff()) ||
      std::abs(denominator) < 1e-300) {
    if (ridge == 0.0) {
      raise(ErrorKind::numeric, std::string(where) + ": degenerate slice - increase ridge");
    }
    result.weights = Vector::Constant(t, 1.0 / t);
    result.projected = true;
    return result;
  }
  result.weights = u / denominator;
  if (result.weights.minCoeff() < 0.0) {
    result.projected = true;
    result.weights = result.weights.cwiseMax(0.0);
    const double mass = result.weights.sum();
    if (mass <= 1e-12) {
      result.weights = Vector::Constant(t, 1.0 / t);
    } else {
      result.weights /= mass;
    }
  }
  return result;
}

}  // namespace

std::vector<CrossViewSlice> trans(const std::vector<AffinityGraph>& graphs) {
  check_graph_list(graphs, "trans");
  const int t = int(graphs.size());
  const int n = int(graphs.front().rows());
  if (graphs.front().cols() != n) raise(ErrorKind::invalid_argument, "trans: graphs must be square");
  std::vector<CrossViewSlice> slices(n, CrossViewSlice(t, n));
  for (int i = 0; i < n; ++i)
    for (int v = 0; v < t; ++v) slices[i].row(v) = graphs[v].row(i);
  return slices;
}

std::vector<AffinityGraph> trans_inverse(const std::vector<CrossViewSlice>& slices) {
  check_graph_list(slices, "trans_inverse");
  const int n = int(slices.size());
  const int t = int(slices.front().rows());
  if (int(slices.front().cols()) != n) {
    raise(ErrorKind::invalid_argument, "trans_inverse: slice width must equal slice count");
  }
  std::vector<AffinityGraph> graphs(t, AffinityGraph(n, n));
  for (int i = 0; i < n; ++i)
    for (int v = 0; v < t; ++v) graphs[v].row(i) = slices[i].row(v);
  return graphs;
}

CrossViewSlice update_z_slice(const CrossViewSlice& w_slice, const Vector& a_col,
                              const Vector& g_row, double alpha, double lambda) {
  if (!(alpha > 0.0)) raise(ErrorKind::invalid_argument, "update_z_slice: alpha must be > 0");
  if (lambda < 0.0) raise(ErrorKind::invalid_argument, "update_z_slice: lambda must be >= 0");
  if (a_col.size() != w_slice.rows() || g_row.size() != w_slice.cols()) {
    raise(ErrorKind::invalid_argument, "update_z_slice: shape mismatch");
  }
  // (alpha I + lambda a a')^{-1} M = M/alpha - lambda a (a' M) / (alpha (alpha + lambda a'a))
  const Matrix target = alpha * w_slice + lambda * a_col * g_row.transpose();
  const double gain = lambda / (alpha * (alpha + lambda * a_col.squaredNorm()));
  return target / alpha - gain * a_col * (a_col.transpose() * target);
}

Vector clip_normalize_row(const Vector& row, std::optional<int> self_index) {
  Vector out = row.cwiseMax(0.0);
  const double mass = out.sum();
  if (mass > 0.0) {
    out /= mass;
    return out;
  }
  const int n = int(row.size());
  out.setZero();
  if (self_index && n > 1) {
    const double w = 1.0 / (n - 1);
    for (int j = 0; j < n; ++j)
      if (j != *self_index) out[j] = w;
  } else if (n >= 1) {
    out.setConstant(1.0 / n);
  }
  return out;
}

std::vector<AffinityGraph> postprocess_z(std::vector<AffinityGraph> graphs) {
  check_graph_list(graphs, "postprocess_z");
  for (auto& graph : graphs) {
    if (!graph.allFinite()) raise(ErrorKind::invalid_argument, "postprocess_z: non-finite input");
    const int n = int(graph.rows());
    for (int i = 0; i < n; ++i) graph.row(i) = clip_normalize_row(graph.row(i), i).transpose();
    graph = 0.5 * (graph + graph.transpose()).eval();
    for (int i = 0; i < n; ++i) graph.row(i) = clip_normalize_row(graph.row(i), i).transpose();
  }
  return graphs;
}

SimplexWeights update_a_column_detail(const CrossViewSlice& z_slice, const Vector& g_row,
                                      double ridge) {
  if (g_row.size() != z_slice.cols()) {
    raise(ErrorKind::invalid_argument, "update_a_column: shape mismatch");
  }
  const Matrix T = Vector::Ones(z_slice.rows()) * g_row.transpose() - z_slice;
  return simplex_weights_from_gram(T * T.transpose(), ridge, "update_a_column");
}

Vector update_a_column(const CrossViewSlice& z_slice, const Vector& g_row, double ridge) {
  return update_a_column_detail(z_slice, g_row, ridge).weights;
}

SimplexWeights update_a_graph_level_detail(const AffinityGraph& G,
                                           const std::vector<AffinityGraph>& graphs,
                                           double ridge) {
  check_graph_list(graphs, "update_a_graph_level");
  if (graphs.front().rows() != G.rows() || graphs.front().cols() != G.cols()) {
    raise(ErrorKind::invalid_argument, "update_a_graph_level: size mismatch with G");
  }
  const int t = int(graphs.size());
  Matrix M(t, t);
  for (int v = 0; v < t; ++v) {
    const Matrix dv = G - graphs[v];
    for (int w = v; w < t; ++w) {
      M(v, w) = M(w, v) = dv.cwiseProduct(G - graphs[w]).sum();
    }
  }
  return simplex_weights_from_gram(std::move(M), ridge, "update_a_graph_level");
}

Vector update_a_graph_level(const AffinityGraph& G, const std::vector<AffinityGraph>& graphs,
                            double ridge) {
  return update_a_graph_level_detail(G, graphs, ridge).weights;
}

}  // namespace fgmsc
