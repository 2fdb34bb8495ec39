#pragma once

#include <optional>
#include <vector>

#include "common.hpp"

namespace fgmsc {

// Rearranges t graphs of size n x n into n slices of size t x n; slice i
// holds row i of every graph. trans_inverse is the exact inverse.
std::vector<CrossViewSlice> trans(const std::vector<AffinityGraph>& graphs);
std::vector<AffinityGraph> trans_inverse(const std::vector<CrossViewSlice>& slices);

// Unconstrained minimizer of alpha |W~ - Z~|_F^2 + lambda |g' - a' Z~|_2^2,
// computed through the rank-one inverse of (alpha I + lambda a a').
CrossViewSlice update_z_slice(const CrossViewSlice& w_slice, const Vector& a_col,
                              const Vector& g_row, double alpha, double lambda);

// Clip negatives and rescale to sum 1; an all-zero row becomes uniform over
// the off-self entries.
Vector clip_normalize_row(const Vector& row, std::optional<int> self_index);

// clip -> row-normalize -> symmetrize -> row-normalize, per graph.
std::vector<AffinityGraph> postprocess_z(std::vector<AffinityGraph> graphs);

struct SimplexWeights {
  Vector weights;
  bool projected = false;  // closed form left the simplex and was clipped
};

// Closed-form weights (T T' + ridge I)^{-1} 1, normalized, then clipped back
// onto the simplex (uniform fallback when the clipped mass vanishes).
// T = 1 g' - Z~. ridge = 0 on a singular system is an error.
SimplexWeights update_a_column_detail(const CrossViewSlice& z_slice, const Vector& g_row,
                                      double ridge);
Vector update_a_column(const CrossViewSlice& z_slice, const Vector& g_row, double ridge);

// Graph-level baseline: one weight per view minimizing |G - sum_v a_v Z^v|_F^2
// over the simplex, same closed form applied to vectorized graphs.
SimplexWeights update_a_graph_level_detail(const AffinityGraph& G,
                                           const std::vector<AffinityGraph>& graphs,
                                           double ridge);
Vector update_a_graph_level(const AffinityGraph& G, const std::vector<AffinityGraph>& graphs,
                            double ridge);

}  // namespace fgmsc
