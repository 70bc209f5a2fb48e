/*------------------------------------------------------------------------------
 *
 *   Copyright 2026 The fdyn Authors
 *
 *   Licensed under the Apache License, Version 2.0 (the "License");
 *   you may not use this file except in compliance with the License.
 *   You may obtain a copy of the License at
 *
 *       http://www.apache.org/licenses/LICENSE-2.0
 *
 *   Unless required by applicable law or agreed to in writing, software
 *   distributed under the License is distributed on an "AS IS" BASIS,
 *   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *   See the License for the specific language governing permissions and
 *   limitations under the License.
 *
 *----------------------------------------------------------------------------*/

#ifndef FDYN_FDYN_H
#define FDYN_FDYN_H

/*
 * C interface to libfdyn.
 *
 * All objects are opaque handles created by fdyn_*_compute / _load / _from_*
 * and released with the matching fdyn_*_free (which accepts NULL). Every
 * fallible call returns an fdyn_status; on failure a description is
 * available from fdyn_last_error_message() on the same thread until the next
 * failing call.
 *
 * Array getters copy into caller storage: pass a buffer and its capacity in
 * elements. FDYN_ERR_BUFFER_TOO_SMALL is returned if it does not fit; query
 * sizes first with the matching *_shape / *_size call. Matrices are
 * row-major.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(FDYN_BUILDING_LIBRARY)
#    define FDYN_API __declspec(dllexport)
#  else
#    define FDYN_API __declspec(dllimport)
#  endif
#else
#  define FDYN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fdyn_status
{
  FDYN_OK                       = 0,
  FDYN_ERR_DIMENSION            = 1,
  FDYN_ERR_GRID                 = 2,
  FDYN_ERR_DEGENERATE_SHAPE     = 3,
  FDYN_ERR_EMPTY_INPUT          = 4,
  FDYN_ERR_CONVERGENCE          = 5,
  FDYN_ERR_NUMERICAL            = 6,
  FDYN_ERR_INSUFFICIENT_SAMPLE  = 7,
  FDYN_ERR_PARAMETER            = 8,
  FDYN_ERR_CONFIG               = 9,
  FDYN_ERR_INVARIANT            = 10,
  FDYN_ERR_PARSE                = 11,
  FDYN_ERR_IO                   = 12,
  FDYN_ERR_NULL_ARGUMENT        = 100,
  FDYN_ERR_BUFFER_TOO_SMALL     = 101,
  FDYN_ERR_INTERNAL             = 102
} fdyn_status;

typedef enum fdyn_space
{
  FDYN_SPACE_NETWORK      = 0,
  FDYN_SPACE_DISTRIBUTION = 1,
  FDYN_SPACE_SHAPE        = 2
} fdyn_space;

typedef enum fdyn_regime
{
  FDYN_REGIME_UNDEFINED   = 0,
  FDYN_REGIME_CENTRIPETAL = 1,
  FDYN_REGIME_CENTRIFUGAL = 2
} fdyn_regime;

typedef enum fdyn_sim_kind
{
  FDYN_SIM_NETWORKS            = 0,
  FDYN_SIM_NETWORKS_SUPPLEMENT = 1,
  FDYN_SIM_GAUSSIANS           = 2
} fdyn_sim_kind;

typedef struct fdyn_sample   fdyn_sample;
typedef struct fdyn_mean     fdyn_mean;
typedef struct fdyn_variance fdyn_variance;
typedef struct fdyn_fpca     fdyn_fpca;
typedef struct fdyn_dynamics fdyn_dynamics;

typedef void (*fdyn_log_fn)(const char *message, void *user_data);

FDYN_API const char *fdyn_version(void);
FDYN_API const char *fdyn_status_name(fdyn_status status);
FDYN_API const char *fdyn_last_error_message(void);

/* ---- samples ------------------------------------------------------------ */

FDYN_API fdyn_status fdyn_sample_load(const char *path, fdyn_sample **out);
FDYN_API fdyn_status fdyn_sample_save(const fdyn_sample *sample, const char *path);
/* "subject_id,group" table; FDYN_ERR_PARAMETER if the sample is unlabeled. */
FDYN_API fdyn_status fdyn_sample_save_labels(const fdyn_sample *sample, const char *path);
FDYN_API fdyn_status fdyn_sample_info(const fdyn_sample *sample, size_t *subjects,
                                      size_t *grid_points, fdyn_space *space);
FDYN_API fdyn_status fdyn_sample_grid(const fdyn_sample *sample, double *out, size_t capacity);

/* laplacians: n * m * r * r values, subject-major then grid index.
 * ids, groups may be NULL (generated ids / unlabeled). */
FDYN_API fdyn_status fdyn_sample_from_networks(size_t n, size_t m, size_t r, const double *grid,
                                               const double *laplacians, const char *const *ids,
                                               const char *const *groups, fdyn_sample **out);
/* quantiles: n * m * levels values on the shared probability grid. */
FDYN_API fdyn_status fdyn_sample_from_distributions(size_t n, size_t m, size_t levels,
                                                    const double *grid, const double *prob_grid,
                                                    const double *quantiles,
                                                    const char *const *ids,
                                                    const char *const *groups, fdyn_sample **out);
/* coords: n * m * k (re, im) pairs; each configuration must be centered. */
FDYN_API fdyn_status fdyn_sample_from_shapes(size_t n, size_t m, size_t k, const double *grid,
                                             const double *coords, const char *const *ids,
                                             const char *const *groups, fdyn_sample **out);
FDYN_API void        fdyn_sample_free(fdyn_sample *sample);

/* ---- simulation --------------------------------------------------------- */

typedef struct fdyn_sim_options
{
  fdyn_sim_kind kind;
  size_t        n;                /* subjects per group for FDYN_SIM_NETWORKS */
  size_t        grid_points;      /* uniform grid on [0, 1] */
  size_t        prob_grid_points; /* FDYN_SIM_GAUSSIANS only */
  uint64_t      seed;
} fdyn_sim_options;

FDYN_API void        fdyn_sim_options_default(fdyn_sim_options *options);
FDYN_API fdyn_status fdyn_parse_sim_kind(const char *name, fdyn_sim_kind *out);
/* population_mean may be NULL. */
FDYN_API fdyn_status fdyn_simulate(const fdyn_sim_options *options, fdyn_sample **sample,
                                   fdyn_mean **population_mean);
/* Writes sample.json, labels.csv and population_mean.json. */
FDYN_API fdyn_status fdyn_simulate_to_directory(const fdyn_sim_options *options,
                                                const char             *out_dir);

/* ---- mean trajectories -------------------------------------------------- */

FDYN_API fdyn_status fdyn_mean_compute(const fdyn_sample *sample, fdyn_mean **out);
FDYN_API fdyn_status fdyn_mean_load(const char *path, fdyn_mean **out);
FDYN_API fdyn_status fdyn_mean_save(const fdyn_mean *mean, const char *path);
FDYN_API fdyn_status fdyn_mean_is_oracle(const fdyn_mean *mean, int *is_oracle);
/* Treat the mean as a known population mean (oracle variance path). */
FDYN_API fdyn_status fdyn_mean_mark_oracle(fdyn_mean *mean);
FDYN_API void        fdyn_mean_free(fdyn_mean *mean);

/* ---- variance trajectories ---------------------------------------------- */

FDYN_API fdyn_status fdyn_variance_compute(const fdyn_sample *sample, const fdyn_mean *mean,
                                           fdyn_variance **out);
/* values: n * m; ids and groups may be NULL. */
FDYN_API fdyn_status fdyn_variance_from_values(size_t n, size_t m, const double *grid,
                                               const double *values, const char *const *ids,
                                               const char *const *groups, fdyn_variance **out);
FDYN_API fdyn_status fdyn_variance_load(const char *path, fdyn_variance **out);
FDYN_API fdyn_status fdyn_variance_save(const fdyn_variance *v, const char *path);
/* Attach group labels from a "subject_id,group" table, matched by id. */
FDYN_API fdyn_status fdyn_variance_attach_labels(fdyn_variance *v, const char *labels_path);
FDYN_API fdyn_status fdyn_variance_shape(const fdyn_variance *v, size_t *subjects,
                                         size_t *grid_points);
FDYN_API fdyn_status fdyn_variance_values(const fdyn_variance *v, double *out, size_t capacity);
FDYN_API fdyn_status fdyn_variance_is_oracle(const fdyn_variance *v, int *is_oracle);
FDYN_API void        fdyn_variance_free(fdyn_variance *v);

/* ---- FPCA --------------------------------------------------------------- */

typedef struct fdyn_fpca_options
{
  size_t components;    /* 0: choose by fve_threshold */
  double fve_threshold; /* in (0, 1], default 0.95 */
} fdyn_fpca_options;

FDYN_API void        fdyn_fpca_options_default(fdyn_fpca_options *options);
FDYN_API fdyn_status fdyn_fpca_compute(const fdyn_variance *v, const fdyn_fpca_options *options,
                                       fdyn_fpca **out);
FDYN_API fdyn_status fdyn_fpca_shape(const fdyn_fpca *fpca, size_t *subjects,
                                     size_t *grid_points, size_t *components, size_t *rank);
FDYN_API fdyn_status fdyn_fpca_mean_function(const fdyn_fpca *fpca, double *out,
                                             size_t capacity);
FDYN_API fdyn_status fdyn_fpca_covariance(const fdyn_fpca *fpca, double *out, size_t capacity);
FDYN_API fdyn_status fdyn_fpca_eigenvalues(const fdyn_fpca *fpca, double *out, size_t capacity);
FDYN_API fdyn_status fdyn_fpca_eigengaps(const fdyn_fpca *fpca, double *out, size_t capacity);
FDYN_API fdyn_status fdyn_fpca_fve(const fdyn_fpca *fpca, double *out, size_t capacity);
/* components * grid_points */
FDYN_API fdyn_status fdyn_fpca_eigenfunctions(const fdyn_fpca *fpca, double *out,
                                              size_t capacity);
/* subjects * components */
FDYN_API fdyn_status fdyn_fpca_scores(const fdyn_fpca *fpca, double *out, size_t capacity);
/* nu + multiplier * sqrt(lambda_j) * phi_j, j zero-based; grid_points values. */
FDYN_API fdyn_status fdyn_fpca_mode_of_variation(const fdyn_fpca *fpca, size_t component,
                                                 double multiplier, double *out,
                                                 size_t capacity);
FDYN_API fdyn_status fdyn_fpca_note_count(const fdyn_fpca *fpca, size_t *count);
/* Pointer stays valid until the handle is freed. */
FDYN_API fdyn_status fdyn_fpca_note(const fdyn_fpca *fpca, size_t index, const char **message);
/* Writes nu_hat.csv, covariance.csv, eigen.csv, eigenfunctions.csv,
 * scores.csv, scores_scatter.svg; ids and labels come from v. */
FDYN_API fdyn_status fdyn_fpca_write(const fdyn_fpca *fpca, const fdyn_variance *v,
                                     const char *out_dir);
FDYN_API void        fdyn_fpca_free(fdyn_fpca *fpca);

/* ---- empirical dynamics ------------------------------------------------- */

FDYN_API fdyn_status fdyn_default_bandwidth(const fdyn_variance *v, double *bandwidth);
/* bandwidth 0 disables presmoothing. */
FDYN_API fdyn_status fdyn_dynamics_compute(const fdyn_variance *v, double bandwidth,
                                           fdyn_dynamics **out);
FDYN_API fdyn_status fdyn_dynamics_size(const fdyn_dynamics *d, size_t *grid_points);
/* NaN marks undefined points. */
FDYN_API fdyn_status fdyn_dynamics_beta(const fdyn_dynamics *d, double *out, size_t capacity);
FDYN_API fdyn_status fdyn_dynamics_r_squared(const fdyn_dynamics *d, double *out,
                                             size_t capacity);
FDYN_API fdyn_status fdyn_dynamics_drift_variance(const fdyn_dynamics *d, double *out,
                                                  size_t capacity);
FDYN_API fdyn_status fdyn_dynamics_regimes(const fdyn_dynamics *d, fdyn_regime *out,
                                           size_t capacity);
FDYN_API fdyn_status fdyn_dynamics_save(const fdyn_dynamics *d, const char *path);
FDYN_API void        fdyn_dynamics_free(fdyn_dynamics *d);

/* ---- full pipeline ------------------------------------------------------ */

typedef struct fdyn_pipeline_options
{
  const char *input;       /* sample manifest */
  const char *output_dir;
  size_t      components;  /* 0: choose by fve_threshold */
  double      fve_threshold;
  double      bandwidth;
  int         auto_bandwidth; /* nonzero: 10% of the time span */
  const char *oracle_mean;    /* optional mean_trajectory.json */
  fdyn_log_fn log;            /* optional */
  void       *log_user_data;
} fdyn_pipeline_options;

FDYN_API void        fdyn_pipeline_options_default(fdyn_pipeline_options *options);
FDYN_API fdyn_status fdyn_pipeline_run(const fdyn_pipeline_options *options);

#ifdef __cplusplus
}
#endif

#endif /* FDYN_FDYN_H */
