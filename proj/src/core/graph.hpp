#pragma once

#include <filesystem>
#include <optional>
#include <vector>

#include "common.hpp"

namespace fgmsc {

struct SimplexRow {
  Vector weights;
  // Denominator of the closed form; the row equals the Euclidean projection
  // of -q/scale onto the simplex over its support. 0 for the uniform
  // fallback on degenerate (all-equal) inputs.
  double scale = 0.0;
};

// Row-wise m-sparse simplex minimizer of q.g + gamma*|g|^2: mass goes to the
// m smallest entries of q (ties by index), weights (q_(m+1) - q_j) / (m q_(m+1)
// - sum_{j<=m} q_j), zero elsewhere. self_index is excluded from candidates.
// When m covers every candidate there is no (m+1)-th value; the row is then
// the simplex projection of -q/(4 gamma_crit), twice the critical ridge, which
// keeps all m candidates active. All-equal candidates fall back to uniform.
SimplexRow sparse_simplex_row_detail(const Vector& q, int m, std::optional<int> self_index);
Vector sparse_simplex_row(const Vector& q, int m, std::optional<int> self_index);

// Adaptive-neighbors graph: row i solves the k-sparse simplex problem over
// squared Euclidean distances to the other samples.
AffinityGraph adaptive_neighbors_graph(const ViewMatrix& view, int k);

// Elementwise mean; rows stay on the simplex.
AffinityGraph init_unified_graph(const std::vector<AffinityGraph>& graphs);

void write_graph_csv(const std::filesystem::path& path, const AffinityGraph& graph);
// Rows "i,j,w" for entries with w > 0.
void write_edge_list_csv(const std::filesystem::path& path, const AffinityGraph& graph);

// Connected components of the symmetrized support {|w| > threshold}.
int count_components(const AffinityGraph& graph, double threshold);

}  // namespace fgmsc
