/*
 * fgmsc — multi-view subspace clustering with per-sample graph fusion.
 *
 * C API of the shared library. All functions return fgmsc_status; on any
 * non-zero status fgmsc_last_error() holds a human-readable message for the
 * calling thread. Handles are opaque and freed with their *_free function.
 *
 * Unless noted otherwise, output buffers are caller-allocated; query the
 * dimensions first (fgmsc_dataset_samples, fgmsc_result_trace_rows, ...).
 * Matrices are passed column-major.
 */

#ifndef FGMSC_H
#define FGMSC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define FGMSC_API __declspec(dllexport)
#else
#define FGMSC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fgmsc_status {
  FGMSC_OK = 0,
  FGMSC_ERROR_INVALID_ARGUMENT = 1,
  FGMSC_ERROR_IO = 2,
  FGMSC_ERROR_PARSE = 3,
  FGMSC_ERROR_NUMERIC = 4,
  FGMSC_ERROR_INTERNAL = 5,
} fgmsc_status;

typedef enum fgmsc_variant {
  FGMSC_VARIANT_FULL = 0,
  FGMSC_VARIANT_FGL_Z = 1,
  FGMSC_VARIANT_FGL_F = 2,
  FGMSC_VARIANT_FGL_ZF = 3,
  FGMSC_VARIANT_GRAPH_LEVEL = 4,
} fgmsc_variant;

typedef struct fgmsc_dataset fgmsc_dataset;
typedef struct fgmsc_result fgmsc_result;

typedef struct fgmsc_params {
  double alpha;       /* self-expression / refined-graph tradeoff, > 0 */
  double lambda;      /* graph fusion weight, > 0 */
  double eta;         /* spectral (rank constraint) weight, > 0 */
  int m;              /* neighbors kept per row of the unified graph */
  int k_init;         /* neighbors of the adaptive initial graphs */
  int outer_iters;    /* outer iterations */
  int inner_iters;    /* multiplicative steps per W subproblem */
  double tol;         /* relative objective change for early stop; 0 disables */
  uint64_t seed;      /* drives W init and k-means */
  int restarts;       /* k-means restarts */
  int variant;        /* one of fgmsc_variant */
} fgmsc_params;

FGMSC_API const char* fgmsc_version(void);
FGMSC_API const char* fgmsc_last_error(void);

/* Worker cap for parallel sections. Defaults to the FGMSC_THREADS
 * environment variable, else the hardware thread count. Results are
 * identical for every setting. n <= 0 restores the default. */
FGMSC_API void fgmsc_set_threads(int n);
FGMSC_API int fgmsc_get_threads(void);

FGMSC_API void fgmsc_params_init(fgmsc_params* params);

/* ---- datasets ---- */

FGMSC_API fgmsc_status fgmsc_dataset_load_manifest(const char* path, fgmsc_dataset** out);
FGMSC_API fgmsc_status fgmsc_dataset_blobs(int n_per_cluster, int c, int t, const int* dims,
                                           double separation, double noise, uint64_t seed,
                                           fgmsc_dataset** out);
FGMSC_API fgmsc_status fgmsc_dataset_toy7(fgmsc_dataset** out);
FGMSC_API void fgmsc_dataset_free(fgmsc_dataset* dataset);

FGMSC_API int fgmsc_dataset_samples(const fgmsc_dataset* dataset);
FGMSC_API int fgmsc_dataset_views(const fgmsc_dataset* dataset);
FGMSC_API int fgmsc_dataset_clusters(const fgmsc_dataset* dataset);
FGMSC_API int fgmsc_dataset_has_labels(const fgmsc_dataset* dataset);
FGMSC_API const char* fgmsc_dataset_name(const fgmsc_dataset* dataset);
FGMSC_API fgmsc_status fgmsc_dataset_labels(const fgmsc_dataset* dataset, int* out);
FGMSC_API int fgmsc_dataset_view_dims(const fgmsc_dataset* dataset, int view);
/* d_v x n, column-major */
FGMSC_API fgmsc_status fgmsc_dataset_view_copy(const fgmsc_dataset* dataset, int view,
                                               double* out);
/* Writes <name>.json manifest + per-view CSVs + labels into dir; the
 * manifest path is written to out_path (manifest_path_size bytes). */
FGMSC_API fgmsc_status fgmsc_dataset_write_files(const fgmsc_dataset* dataset, const char* dir,
                                                 char* out_path, size_t out_path_size);

/* ---- solving ---- */

FGMSC_API fgmsc_status fgmsc_run(const fgmsc_dataset* dataset, const fgmsc_params* params,
                                 fgmsc_result** out);
FGMSC_API void fgmsc_result_free(fgmsc_result* result);

FGMSC_API int fgmsc_result_label_count(const fgmsc_result* result);
FGMSC_API fgmsc_status fgmsc_result_labels(const fgmsc_result* result, int* out);
FGMSC_API int fgmsc_result_has_metrics(const fgmsc_result* result);
FGMSC_API fgmsc_status fgmsc_result_metrics(const fgmsc_result* result, double* acc, double* nmi,
                                            double* ari);
FGMSC_API int fgmsc_result_iterations(const fgmsc_result* result);
FGMSC_API double fgmsc_result_timing_ms(const fgmsc_result* result);
FGMSC_API long fgmsc_result_monotonicity_violations(const fgmsc_result* result);
FGMSC_API long fgmsc_result_projection_activations(const fgmsc_result* result);
FGMSC_API double fgmsc_result_final_objective(const fgmsc_result* result);

/* Objective trace: one row per recorded iteration (row 0 is the value after
 * initialization), 6 columns: total, recon, graph_reg, l1, fusion, spectral.
 * Row-major into a rows*6 buffer. */
FGMSC_API int fgmsc_result_trace_rows(const fgmsc_result* result);
FGMSC_API fgmsc_status fgmsc_result_trace(const fgmsc_result* result, double* out);

/* Final unified graph, n x n column-major. */
FGMSC_API fgmsc_status fgmsc_result_graph(const fgmsc_result* result, double* out);
/* Final spectral embedding, n x c column-major. */
FGMSC_API int fgmsc_result_embedding_cols(const fgmsc_result* result);
FGMSC_API fgmsc_status fgmsc_result_embedding(const fgmsc_result* result, double* out);

/* ---- label evaluation ---- */

FGMSC_API fgmsc_status fgmsc_evaluate(const int* pred, const int* truth, size_t count,
                                      double* acc, double* nmi, double* ari);

#ifdef __cplusplus
}
#endif

#endif /* FGMSC_H */
