#include "unified.hpp"

#include "graph.hpp"
#include "threading.hpp"

namespace fgmsc {

Matrix embedding_distances(const Matrix& F) {
  if (!F.allFinite()) raise(ErrorKind::invalid_argument, "embedding_distances: non-finite input");
  const int n = int(F.rows());
  Matrix gram;
  parallel_gemm(gram, F, F.transpose());
  const Vector sq = gram.diagonal();
  Matrix H(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) H(i, j) = std::max(0.0, sq[i] + sq[j] - 2.0 * gram(i, j));
    H(i, i) = 0.0;
  }
  return H;
}

Vector q_row(const Vector& a_col, const CrossViewSlice& z_slice, const Vector& h_row,
             double lambda, double eta) {
  if (lambda < 0.0 || eta < 0.0) {
    raise(ErrorKind::invalid_argument, "q_row: lambda and eta must be >= 0");
  }
  if (a_col.size() != z_slice.rows() || h_row.size() != z_slice.cols()) {
    raise(ErrorKind::invalid_argument, "q_row: shape mismatch");
  }
  return eta * h_row - 4.0 * lambda * (z_slice.transpose() * a_col);
}

AffinityGraph update_g(const WeightMatrix& A, const std::vector<AffinityGraph>& z_graphs,
                       const Matrix& H, double lambda, double eta, int m) {
  if (z_graphs.empty()) raise(ErrorKind::invalid_argument, "update_g: no refined graphs");
  const int t = int(z_graphs.size());
  const int n = int(z_graphs.front().rows());
  if (int(A.rows()) != t || int(A.cols()) != n || H.rows() != n || H.cols() != n) {
    raise(ErrorKind::invalid_argument, "update_g: shape mismatch");
  }
  if (m < 1 || m > n - 1) {
    raise(ErrorKind::invalid_argument, "update_g: m must be in [1, n-1], got " + std::to_string(m));
  }

  AffinityGraph G(n, n);
  parallel_for(0, n, [&](int i) {
    // a' Z~i without materializing the slice: weighted sum of row i across views.
    Vector weighted = Vector::Zero(n);
    for (int v = 0; v < t; ++v) weighted += A(v, i) * z_graphs[v].row(i).transpose();
    const Vector q = eta * H.row(i).transpose() - 4.0 * lambda * weighted;
    G.row(i) = sparse_simplex_row(q, m, i).transpose();
  });
  return G;
}

}  // namespace fgmsc
