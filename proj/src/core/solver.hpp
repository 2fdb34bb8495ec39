#pragma once

#include <string>
#include <vector>

#include "common.hpp"
#include "dataset.hpp"
#include "embedding.hpp"

namespace fgmsc {

enum class Variant {
  full,         // joint optimization of W, Z, G, A, F
  fgl_z,        // W pre-solved once, frozen during the loop
  fgl_f,        // no spectral coupling; one clustering pass after the loop
  fgl_zf,       // both modifications
  graph_level,  // one fusion weight per view instead of per sample
};

Variant variant_from_name(const std::string& name);  // accepts "fgl-z" and "fgl_z" spellings
std::string variant_name(Variant variant);

struct SolverParams {
  double alpha = 0.01;
  double lambda = 1.0;
  double eta = 10.0;
  int m = 10;       // neighbors kept per row of G (clamped to n-1)
  int k_init = 10;  // neighbors for the adaptive initial graphs (clamped to n-1)
  int outer_iters = 10;
  int inner_iters = 30;
  double tol = 1e-6;  // relative objective change for early stop; 0 disables
  std::uint64_t seed = 0;
  int restarts = 10;  // k-means restarts
  Variant variant = Variant::full;

  void validate() const;
};

struct ObjectiveTerms {
  double recon = 0.0;      // sum_v |X - X W|_F^2
  double graph_reg = 0.0;  // alpha sum_v |W - Z|_F^2
  double l1 = 0.0;         // sum_v |W|_1
  double fusion = 0.0;     // lambda sum_i |G_i' - A_i' Z~i|^2
  double spectral = 0.0;   // eta Tr(F' L F); reported as 0 when the variant decouples it
  double total() const { return recon + graph_reg + l1 + fusion + spectral; }
};

struct SolverState {
  std::vector<SelfExpression> W;
  std::vector<AffinityGraph> Z;
  AffinityGraph G;
  WeightMatrix A;  // t x n, columns on the simplex
  Embedding F;
  std::vector<double> objective_trace;     // entry 0 is the post-initialization value
  std::vector<ObjectiveTerms> term_trace;  // aligned with objective_trace
  long projection_activations = 0;   // A-updates that left the simplex and were clipped
  long monotonicity_violations = 0;  // steps where the objective rose beyond tolerance
};

ObjectiveTerms objective_terms(const SolverState& state, const MultiViewDataset& dataset,
                               const SolverParams& params);
double objective(const SolverState& state, const MultiViewDataset& dataset,
                 const SolverParams& params);

// Steps 1-3 of the outer algorithm: uniform A, adaptive-neighbors Z, G as
// their mean, F from the spectral problem, W strictly positive random.
SolverState initialize(const MultiViewDataset& dataset, const SolverParams& params);

// One outer iteration: W per view, Z per sample (+ postprocess), G, A, F,
// in that order; appends the objective to the trace.
void step(SolverState& state, const MultiViewDataset& dataset, const SolverParams& params);

struct RunResult {
  std::vector<int> labels;
  bool has_metrics = false;
  double acc = 0.0, nmi = 0.0, ari = 0.0;
  SolverState state;
  SolverParams params;
  int iterations = 0;
  double timing_ms = 0.0;
};

// Normalizes every view to [0, 1], runs the outer loop until outer_iters or
// the relative objective change falls below tol, then clusters the final
// embedding with k-means. Metrics are filled in when the dataset has labels.
RunResult run(const MultiViewDataset& dataset, const SolverParams& params);

}  // namespace fgmsc
