#pragma once

#include <vector>

#include "common.hpp"

namespace fgmsc {

// Pairwise squared distances between rows of F, clamped at zero; symmetric
// with an exactly zero diagonal.
Matrix embedding_distances(const Matrix& F);

// Per-row linear cost Q_i = eta * H_i - 4 lambda * (a' Z~), whose m smallest
// entries receive the row's mass.
Vector q_row(const Vector& a_col, const CrossViewSlice& z_slice, const Vector& h_row,
             double lambda, double eta);

// Row i = sparse_simplex_row(q_row(...), m, self = i). A is t x n with
// columns on the simplex; z_graphs are the refined per-view graphs.
AffinityGraph update_g(const WeightMatrix& A, const std::vector<AffinityGraph>& z_graphs,
                       const Matrix& H, double lambda, double eta, int m);

}  // namespace fgmsc
