#include "fgmsc/fgmsc.h"

#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include "../core/common.hpp"
#include "../core/dataset.hpp"
#include "../core/solver.hpp"
#include "../core/threading.hpp"
#include "../core/version.hpp"

struct fgmsc_dataset {
  fgmsc::MultiViewDataset data;
};

struct fgmsc_result {
  fgmsc::RunResult data;
};

namespace {

thread_local std::string g_last_error;

fgmsc_status status_from(const fgmsc::Error& error) {
  g_last_error = error.what();
  switch (error.kind()) {
    case fgmsc::ErrorKind::invalid_argument: return FGMSC_ERROR_INVALID_ARGUMENT;
    case fgmsc::ErrorKind::io: return FGMSC_ERROR_IO;
    case fgmsc::ErrorKind::parse: return FGMSC_ERROR_PARSE;
    case fgmsc::ErrorKind::numeric: return FGMSC_ERROR_NUMERIC;
  }
  return FGMSC_ERROR_INTERNAL;
}

fgmsc_status fail_invalid(const char* message) {
  g_last_error = message;
  return FGMSC_ERROR_INVALID_ARGUMENT;
}

template <typename Fn>
fgmsc_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return FGMSC_OK;
  } catch (const fgmsc::Error& error) {
    return status_from(error);
  } catch (const std::exception& error) {
    g_last_error = error.what();
    return FGMSC_ERROR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return FGMSC_ERROR_INTERNAL;
  }
}

}  // namespace

extern "C" {

const char* fgmsc_version(void) { return fgmsc::kVersion; }

const char* fgmsc_last_error(void) { return g_last_error.c_str(); }

void fgmsc_set_threads(int n) { fgmsc::set_max_threads(n); }

int fgmsc_get_threads(void) { return fgmsc::max_threads(); }

void fgmsc_params_init(fgmsc_params* params) {
  if (!params) return;
  const fgmsc::SolverParams defaults;
  params->alpha = defaults.alpha;
  params->lambda = defaults.lambda;
  params->eta = defaults.eta;
  params->m = defaults.m;
  params->k_init = defaults.k_init;
  params->outer_iters = defaults.outer_iters;
  params->inner_iters = defaults.inner_iters;
  params->tol = defaults.tol;
  params->seed = defaults.seed;
  params->restarts = defaults.restarts;
  params->variant = FGMSC_VARIANT_FULL;
}

fgmsc_status fgmsc_dataset_load_manifest(const char* path, fgmsc_dataset** out) {
  if (!path || !out) return fail_invalid("null argument");
  return guarded([&] {
    auto handle = std::make_unique<fgmsc_dataset>();
    handle->data = fgmsc::load_dataset(fgmsc::load_manifest(path));
    *out = handle.release();
  });
}

fgmsc_status fgmsc_dataset_blobs(int n_per_cluster, int c, int t, const int* dims,
                                 double separation, double noise, uint64_t seed,
                                 fgmsc_dataset** out) {
  if (!out || !dims) return fail_invalid("null argument");
  return guarded([&] {
    auto handle = std::make_unique<fgmsc_dataset>();
    handle->data = fgmsc::generate_blobs(n_per_cluster, c, t,
                                         std::vector<int>(dims, dims + std::max(0, t)),
                                         separation, noise, seed);
    *out = handle.release();
  });
}

fgmsc_status fgmsc_dataset_toy7(fgmsc_dataset** out) {
  if (!out) return fail_invalid("null argument");
  return guarded([&] {
    auto handle = std::make_unique<fgmsc_dataset>();
    handle->data = fgmsc::generate_toy7();
    *out = handle.release();
  });
}

void fgmsc_dataset_free(fgmsc_dataset* dataset) { delete dataset; }

int fgmsc_dataset_samples(const fgmsc_dataset* dataset) {
  return dataset ? dataset->data.sample_count() : 0;
}

int fgmsc_dataset_views(const fgmsc_dataset* dataset) {
  return dataset ? dataset->data.view_count() : 0;
}

int fgmsc_dataset_clusters(const fgmsc_dataset* dataset) {
  return dataset ? dataset->data.n_clusters : 0;
}

int fgmsc_dataset_has_labels(const fgmsc_dataset* dataset) {
  return dataset && dataset->data.labels ? 1 : 0;
}

const char* fgmsc_dataset_name(const fgmsc_dataset* dataset) {
  return dataset ? dataset->data.name.c_str() : "";
}

fgmsc_status fgmsc_dataset_labels(const fgmsc_dataset* dataset, int* out) {
  if (!dataset || !out) return fail_invalid("null argument");
  if (!dataset->data.labels) return fail_invalid("dataset has no labels");
  std::memcpy(out, dataset->data.labels->data(), dataset->data.labels->size() * sizeof(int));
  return FGMSC_OK;
}

int fgmsc_dataset_view_dims(const fgmsc_dataset* dataset, int view) {
  if (!dataset || view < 0 || view >= dataset->data.view_count()) return 0;
  return int(dataset->data.views[view].rows());
}

fgmsc_status fgmsc_dataset_view_copy(const fgmsc_dataset* dataset, int view, double* out) {
  if (!dataset || !out) return fail_invalid("null argument");
  if (view < 0 || view >= dataset->data.view_count()) return fail_invalid("view out of range");
  const auto& m = dataset->data.views[view];
  std::memcpy(out, m.data(), sizeof(double) * std::size_t(m.size()));
  return FGMSC_OK;
}

fgmsc_status fgmsc_dataset_write_files(const fgmsc_dataset* dataset, const char* dir,
                                       char* out_path, size_t out_path_size) {
  if (!dataset || !dir) return fail_invalid("null argument");
  return guarded([&] {
    const auto manifest = fgmsc::write_dataset_files(dataset->data, dir);
    if (out_path && out_path_size > 0) {
      std::strncpy(out_path, manifest.string().c_str(), out_path_size - 1);
      out_path[out_path_size - 1] = '\0';
    }
  });
}

fgmsc_status fgmsc_run(const fgmsc_dataset* dataset, const fgmsc_params* params,
                       fgmsc_result** out) {
  if (!dataset || !params || !out) return fail_invalid("null argument");
  if (params->variant < FGMSC_VARIANT_FULL || params->variant > FGMSC_VARIANT_GRAPH_LEVEL) {
    return fail_invalid("unknown variant value");
  }
  return guarded([&] {
    fgmsc::SolverParams sp;
    sp.alpha = params->alpha;
    sp.lambda = params->lambda;
    sp.eta = params->eta;
    sp.m = params->m;
    sp.k_init = params->k_init;
    sp.outer_iters = params->outer_iters;
    sp.inner_iters = params->inner_iters;
    sp.tol = params->tol;
    sp.seed = params->seed;
    sp.restarts = params->restarts;
    sp.variant = static_cast<fgmsc::Variant>(params->variant);
    auto handle = std::make_unique<fgmsc_result>();
    handle->data = fgmsc::run(dataset->data, sp);
    *out = handle.release();
  });
}

void fgmsc_result_free(fgmsc_result* result) { delete result; }

int fgmsc_result_label_count(const fgmsc_result* result) {
  return result ? int(result->data.labels.size()) : 0;
}

fgmsc_status fgmsc_result_labels(const fgmsc_result* result, int* out) {
  if (!result || !out) return fail_invalid("null argument");
  std::memcpy(out, result->data.labels.data(), result->data.labels.size() * sizeof(int));
  return FGMSC_OK;
}

int fgmsc_result_has_metrics(const fgmsc_result* result) {
  return result && result->data.has_metrics ? 1 : 0;
}

fgmsc_status fgmsc_result_metrics(const fgmsc_result* result, double* acc, double* nmi,
                                  double* ari) {
  if (!result || !acc || !nmi || !ari) return fail_invalid("null argument");
  if (!result->data.has_metrics) return fail_invalid("result has no metrics (dataset unlabeled)");
  *acc = result->data.acc;
  *nmi = result->data.nmi;
  *ari = result->data.ari;
  return FGMSC_OK;
}

int fgmsc_result_iterations(const fgmsc_result* result) {
  return result ? result->data.iterations : 0;
}

double fgmsc_result_timing_ms(const fgmsc_result* result) {
  return result ? result->data.timing_ms : 0.0;
}

long fgmsc_result_monotonicity_violations(const fgmsc_result* result) {
  return result ? result->data.state.monotonicity_violations : 0;
}

long fgmsc_result_projection_activations(const fgmsc_result* result) {
  return result ? result->data.state.projection_activations : 0;
}

double fgmsc_result_final_objective(const fgmsc_result* result) {
  if (!result || result->data.state.objective_trace.empty()) return 0.0;
  return result->data.state.objective_trace.back();
}

int fgmsc_result_trace_rows(const fgmsc_result* result) {
  return result ? int(result->data.state.term_trace.size()) : 0;
}

fgmsc_status fgmsc_result_trace(const fgmsc_result* result, double* out) {
  if (!result || !out) return fail_invalid("null argument");
  for (std::size_t r = 0; r < result->data.state.term_trace.size(); ++r) {
    const auto& terms = result->data.state.term_trace[r];
    out[r * 6 + 0] = terms.total();
    out[r * 6 + 1] = terms.recon;
    out[r * 6 + 2] = terms.graph_reg;
    out[r * 6 + 3] = terms.l1;
    out[r * 6 + 4] = terms.fusion;
    out[r * 6 + 5] = terms.spectral;
  }
  return FGMSC_OK;
}

fgmsc_status fgmsc_result_graph(const fgmsc_result* result, double* out) {
  if (!result || !out) return fail_invalid("null argument");
  const auto& g = result->data.state.G;
  std::memcpy(out, g.data(), sizeof(double) * std::size_t(g.size()));
  return FGMSC_OK;
}

int fgmsc_result_embedding_cols(const fgmsc_result* result) {
  return result ? int(result->data.state.F.F.cols()) : 0;
}

fgmsc_status fgmsc_result_embedding(const fgmsc_result* result, double* out) {
  if (!result || !out) return fail_invalid("null argument");
  const auto& f = result->data.state.F.F;
  std::memcpy(out, f.data(), sizeof(double) * std::size_t(f.size()));
  return FGMSC_OK;
}

fgmsc_status fgmsc_evaluate(const int* pred, const int* truth, size_t count, double* acc,
                            double* nmi, double* ari) {
  if (!pred || !truth || !acc || !nmi || !ari) return fail_invalid("null argument");
  return guarded([&] {
    const std::vector<int> p(pred, pred + count);
    const std::vector<int> t(truth, truth + count);
    *acc = fgmsc::clustering_accuracy(p, t);
    *nmi = fgmsc::normalized_mutual_info(p, t);
    *ari = fgmsc::adjusted_rand_index(p, t);
  });
}

}  // extern "C"
