#include "solver.hpp"

#include <chrono>
#include <cmath>

#include "fusion.hpp"
#include "graph.hpp"
#include "subspace.hpp"
#include "threading.hpp"
#include "unified.hpp"

namespace fgmsc {

namespace {

constexpr double kAColumnRidge = 1e-8;
constexpr double kInnerTolerance = 1e-5;         // relative objective change, W inner loop
constexpr double kMonotonicityTolerance = 1e-6;  // relative, per step

bool updates_w_in_loop(Variant v) { return v == Variant::full || v == Variant::fgl_f || v == Variant::graph_level; }
bool presolves_w(Variant v) { return v == Variant::fgl_z || v == Variant::fgl_zf; }
bool couples_spectral(Variant v) {
  return v == Variant::full || v == Variant::fgl_z || v == Variant::graph_level;
}

int clamped(int requested, int n) { return std::max(1, std::min(requested, n - 1)); }

CrossViewSlice gather_slice(const std::vector<Matrix>& graphs, int i) {
  CrossViewSlice slice(int(graphs.size()), int(graphs.front().cols()));
  for (std::size_t v = 0; v < graphs.size(); ++v) slice.row(int(v)) = graphs[v].row(i);
  return slice;
}

void check_finite_objective(const ObjectiveTerms& terms) {
  if (std::isfinite(terms.total())) return;
  raise(ErrorKind::numeric,
        "solver diverged: non-finite objective (recon " + std::to_string(terms.recon) +
            ", graph_reg " + std::to_string(terms.graph_reg) + ", l1 " + std::to_string(terms.l1) +
            ", fusion " + std::to_string(terms.fusion) + ", spectral " +
            std::to_string(terms.spectral) + ")");
}

void append_objective(SolverState& state, const MultiViewDataset& dataset,
                      const SolverParams& params) {
  const ObjectiveTerms terms = objective_terms(state, dataset, params);
  check_finite_objective(terms);
  if (!state.objective_trace.empty()) {
    const double previous = state.objective_trace.back();
    if (terms.total() > previous + kMonotonicityTolerance * std::abs(previous)) {
      ++state.monotonicity_violations;
    }
  }
  state.objective_trace.push_back(terms.total());
  state.term_trace.push_back(terms);
}

}  // namespace

Variant variant_from_name(const std::string& name) {
  std::string canon = name;
  for (char& ch : canon)
    if (ch == '-') ch = '_';
  if (canon == "full") return Variant::full;
  if (canon == "fgl_z") return Variant::fgl_z;
  if (canon == "fgl_f") return Variant::fgl_f;
  if (canon == "fgl_zf") return Variant::fgl_zf;
  if (canon == "graph_level") return Variant::graph_level;
  raise(ErrorKind::invalid_argument,
        "unknown variant \"" + name + "\" (expected full, fgl-z, fgl-f, fgl-zf or graph-level)");
}

std::string variant_name(Variant variant) {
  switch (variant) {
    case Variant::full: return "full";
    case Variant::fgl_z: return "fgl_z";
    case Variant::fgl_f: return "fgl_f";
    case Variant::fgl_zf: return "fgl_zf";
    case Variant::graph_level: return "graph_level";
  }
  return "full";
}

void SolverParams::validate() const {
  if (!(alpha > 0.0)) raise(ErrorKind::invalid_argument, "params: alpha must be > 0");
  if (!(lambda > 0.0)) raise(ErrorKind::invalid_argument, "params: lambda must be > 0");
  if (!(eta > 0.0)) raise(ErrorKind::invalid_argument, "params: eta must be > 0");
  if (m < 1) raise(ErrorKind::invalid_argument, "params: m must be >= 1");
  if (k_init < 1) raise(ErrorKind::invalid_argument, "params: k_init must be >= 1");
  if (outer_iters < 1) raise(ErrorKind::invalid_argument, "params: outer_iters must be >= 1");
  if (inner_iters < 1) raise(ErrorKind::invalid_argument, "params: inner_iters must be >= 1");
  if (tol < 0.0) raise(ErrorKind::invalid_argument, "params: tol must be >= 0");
  if (restarts < 1) raise(ErrorKind::invalid_argument, "params: restarts must be >= 1");
}

ObjectiveTerms objective_terms(const SolverState& state, const MultiViewDataset& dataset,
                               const SolverParams& params) {
  const int t = dataset.view_count();
  const int n = dataset.sample_count();
  if (int(state.W.size()) != t || int(state.Z.size()) != t || state.G.rows() != n ||
      int(state.A.cols()) != n || int(state.A.rows()) != t) {
    raise(ErrorKind::invalid_argument, "objective: state does not match dataset");
  }

  ObjectiveTerms terms;
  Matrix reconstruction;
  for (int v = 0; v < t; ++v) {
    parallel_gemm(reconstruction, dataset.views[v], state.W[v]);
    terms.recon += (dataset.views[v] - reconstruction).squaredNorm();
    terms.graph_reg += params.alpha * (state.W[v] - state.Z[v]).squaredNorm();
    terms.l1 += state.W[v].cwiseAbs().sum();
  }

  Vector fusion_by_sample = Vector::Zero(n);
  parallel_for(0, n, [&](int i) {
    Vector weighted = Vector::Zero(n);
    for (int v = 0; v < t; ++v) weighted += state.A(v, i) * state.Z[v].row(i).transpose();
    fusion_by_sample[i] = (state.G.row(i).transpose() - weighted).squaredNorm();
  });
  terms.fusion = params.lambda * fusion_by_sample.sum();

  if (couples_spectral(params.variant)) {
    const LaplacianMatrix lap = laplacian(state.G);
    terms.spectral = params.eta * (lap.L * state.F.F).cwiseProduct(state.F.F).sum();
  }
  return terms;
}

double objective(const SolverState& state, const MultiViewDataset& dataset,
                 const SolverParams& params) {
  return objective_terms(state, dataset, params).total();
}

SolverState initialize(const MultiViewDataset& dataset, const SolverParams& params) {
  dataset.validate();
  params.validate();
  const int t = dataset.view_count();
  const int n = dataset.sample_count();
  if (dataset.n_clusters > n) {
    raise(ErrorKind::invalid_argument, "initialize: n_clusters exceeds the number of samples");
  }
  if (n < 2) raise(ErrorKind::invalid_argument, "initialize: need at least 2 samples");

  SolverState state;
  state.A = WeightMatrix::Constant(t, n, 1.0 / t);
  state.Z.reserve(t);
  for (int v = 0; v < t; ++v) {
    state.Z.push_back(adaptive_neighbors_graph(dataset.views[v], clamped(params.k_init, n)));
  }
  state.G = init_unified_graph(state.Z);
  state.F = spectral_embedding(laplacian(state.G), dataset.n_clusters);
  state.W.reserve(t);
  for (int v = 0; v < t; ++v) state.W.push_back(init_w(n, params.seed));
  append_objective(state, dataset, params);
  return state;
}

void step(SolverState& state, const MultiViewDataset& dataset, const SolverParams& params) {
  const int t = dataset.view_count();
  const int n = dataset.sample_count();
  const int m = clamped(params.m, n);

  if (updates_w_in_loop(params.variant)) {
    for (int v = 0; v < t; ++v) {
      state.W[v] = update_w(dataset.views[v], state.W[v], state.Z[v], params.alpha,
                            params.inner_iters, kInnerTolerance)
                       .W;
    }
  }

  std::vector<AffinityGraph> refined(t, AffinityGraph(n, n));
  parallel_for(0, n, [&](int i) {
    const CrossViewSlice w_slice = gather_slice(state.W, i);
    const CrossViewSlice z_slice = update_z_slice(w_slice, state.A.col(i),
                                                  state.G.row(i).transpose(), params.alpha,
                                                  params.lambda);
    for (int v = 0; v < t; ++v) refined[v].row(i) = z_slice.row(v);
  });
  state.Z = postprocess_z(std::move(refined));

  const Matrix H = embedding_distances(state.F.F);
  const double eta = couples_spectral(params.variant) ? params.eta : 0.0;
  state.G = update_g(state.A, state.Z, H, params.lambda, eta, m);

  if (params.variant == Variant::graph_level) {
    const SimplexWeights weights = update_a_graph_level_detail(state.G, state.Z, kAColumnRidge);
    state.projection_activations += weights.projected;
    state.A = weights.weights.replicate(1, n);
  } else {
    std::vector<char> projected(n, 0);
    parallel_for(0, n, [&](int i) {
      const CrossViewSlice z_slice = gather_slice(state.Z, i);
      const SimplexWeights weights =
          update_a_column_detail(z_slice, state.G.row(i).transpose(), kAColumnRidge);
      state.A.col(i) = weights.weights;
      projected[i] = weights.projected;
    });
    for (int i = 0; i < n; ++i) state.projection_activations += projected[i];
  }

  if (couples_spectral(params.variant)) {
    state.F = spectral_embedding(laplacian(state.G), dataset.n_clusters);
  }
  append_objective(state, dataset, params);
}

RunResult run(const MultiViewDataset& dataset, const SolverParams& params) {
  const auto start = std::chrono::steady_clock::now();
  params.validate();
  dataset.validate();

  MultiViewDataset normalized = dataset;
  for (auto& view : normalized.views) view = normalize_unit_range(view);

  RunResult result;
  result.params = params;
  result.state = initialize(normalized, params);

  if (presolves_w(params.variant)) {
    for (int v = 0; v < normalized.view_count(); ++v) {
      result.state.W[v] = update_w(normalized.views[v], result.state.W[v], result.state.Z[v],
                                   params.alpha, params.inner_iters, kInnerTolerance)
                              .W;
    }
    // the trace starts from the state the loop actually sees
    result.state.objective_trace.clear();
    result.state.term_trace.clear();
    append_objective(result.state, normalized, params);
  }

  for (int it = 0; it < params.outer_iters; ++it) {
    const double previous = result.state.objective_trace.back();
    step(result.state, normalized, params);
    ++result.iterations;
    const double current = result.state.objective_trace.back();
    if (params.tol > 0.0 &&
        std::abs(previous - current) < params.tol * std::max(std::abs(previous), 1e-30)) {
      break;
    }
  }

  if (!couples_spectral(params.variant)) {
    result.state.F = spectral_embedding(laplacian(result.state.G), normalized.n_clusters);
  }
  result.labels =
      kmeans(result.state.F.F, normalized.n_clusters, params.seed, params.restarts).labels;

  if (normalized.labels) {
    result.has_metrics = true;
    result.acc = clustering_accuracy(result.labels, *normalized.labels);
    result.nmi = normalized_mutual_info(result.labels, *normalized.labels);
    result.ari = adjusted_rand_index(result.labels, *normalized.labels);
  }
  result.timing_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace fgmsc
