#pragma once

#include <vector>

#include "common.hpp"

namespace fgmsc {

struct LaplacianMatrix {
  Matrix L;        // D - S with S = (G + G')/2
  Vector degrees;  // diagonal of D
};

LaplacianMatrix laplacian(const AffinityGraph& G);

struct Embedding {
  Matrix F;            // n x c, orthonormal columns
  Vector eigenvalues;  // the c smallest eigenvalues of L, ascending
};

// Eigenvectors of the c smallest eigenvalues, with a fixed sign convention:
// the largest-magnitude entry of each column (lowest index on ties) is
// made positive.
Embedding spectral_embedding(const LaplacianMatrix& lap, int c);

struct KMeansResult {
  std::vector<int> labels;
  double inertia = 0.0;
  int iterations = 0;
  std::vector<double> inertia_trace;  // per Lloyd iteration of the winning restart
};

// k-means++ seeded Lloyd iterations on the rows of F; best inertia over
// `restarts` independently seeded starts (ties keep the lowest restart).
KMeansResult kmeans(const Matrix& F, int c, std::uint64_t seed, int restarts);

// Fraction of agreeing labels under the best cluster-to-class assignment
// (Hungarian method on the contingency table).
double clustering_accuracy(const std::vector<int>& pred, const std::vector<int>& truth);

// I(pred; truth) / max(H(pred), H(truth)); 1 when both partitions are the
// same up to renaming (including the all-singleton-entropy-zero case).
double normalized_mutual_info(const std::vector<int>& pred, const std::vector<int>& truth);

double adjusted_rand_index(const std::vector<int>& pred, const std::vector<int>& truth);

}  // namespace fgmsc
