// Copyright 2026 The gstkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GSTKIT_GSTKIT_H_
#define GSTKIT_GSTKIT_H_

/*
 * C interface to gstkit: gate set tomography for qubit gate sets.
 *
 * All objects are opaque handles created by gst_* constructors and released
 * with the matching *_free function (free functions accept NULL). Every
 * fallible call returns a gst_status; on failure, gst_last_error() returns
 * a message describing the most recent error on the calling thread.
 * Strings returned through char** out-parameters are owned by the caller
 * and must be released with gst_string_free().
 *
 * Sequences are passed as canonical keys: gate labels joined by ':' with
 * the empty string denoting the empty sequence.
 */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(GSTKIT_BUILDING_LIBRARY)
#define GSTKIT_API __declspec(dllexport)
#else
#define GSTKIT_API __declspec(dllimport)
#endif
#else
#define GSTKIT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gst_status {
  GST_OK = 0,
  GST_ERR_INVALID_ARGUMENT = 1,
  GST_ERR_DIMENSION_MISMATCH = 2,
  GST_ERR_UNKNOWN_LABEL = 3,
  GST_ERR_NOT_HERMITIAN = 4,
  GST_ERR_NOT_UNITARY = 5,
  GST_ERR_NOT_TRACE_PRESERVING = 6,
  GST_ERR_UNSUPPORTED_DIMENSION = 7,
  GST_ERR_SINGULAR = 8,
  GST_ERR_INCOMPLETE = 9,
  GST_ERR_NON_PHYSICAL = 10,
  GST_ERR_MISSING_DATA = 11,
  GST_ERR_PARSE = 12,
  GST_ERR_IO = 13,
  GST_ERR_NUMERICAL = 14,
  GST_ERR_INTERNAL = 100
} gst_status;

typedef struct gst_gateset gst_gateset;
typedef struct gst_design gst_design;
typedef struct gst_dataset gst_dataset;

GSTKIT_API const char* gst_version(void);
GSTKIT_API const char* gst_last_error(void);
GSTKIT_API const char* gst_status_name(gst_status status);
GSTKIT_API void gst_string_free(char* s);

/* ---- gate sets ---- */

/* Four-gate qubit targets {G1=1l, G2=X(pi/2), G3=Y(pi/2), G4=X(pi)}. */
GSTKIT_API gst_status gst_gateset_targets(gst_gateset** out);
GSTKIT_API gst_status gst_gateset_noisy(double over_rotation, double depolarization, double spam_depolarization,
                                        double spam_rotation, gst_gateset** out);
/* Rotates rho and E about Y by `angle`; gates unchanged. */
GSTKIT_API gst_status gst_gateset_rotate_spam(const gst_gateset* gs, double angle, gst_gateset** out);
GSTKIT_API gst_status gst_gateset_load(const char* path, gst_gateset** out);
GSTKIT_API gst_status gst_gateset_save(const gst_gateset* gs, const char* path);
GSTKIT_API gst_status gst_gateset_from_json(const char* json, gst_gateset** out);
GSTKIT_API gst_status gst_gateset_to_json(const gst_gateset* gs, char** out);
GSTKIT_API gst_status gst_gateset_num_gates(const gst_gateset* gs, size_t* out);
/* The returned label is owned by the gate set. */
GSTKIT_API gst_status gst_gateset_label(const gst_gateset* gs, size_t index, const char** out);
GSTKIT_API gst_status gst_gateset_probability(const gst_gateset* gs, const char* sequence_key, double* out);
GSTKIT_API void gst_gateset_free(gst_gateset* gs);

/* ---- experiment designs ---- */

GSTKIT_API gst_status gst_design_lgst(const char* const* gates, size_t num_gates, const char* const* fiducials,
                                      size_t num_fiducials, int include_spam, gst_design** out);
/* append_gate may be NULL. */
GSTKIT_API gst_status gst_design_germ(const char* const* gates, size_t num_gates, const char* const* fiducials,
                                      size_t num_fiducials, const int* powers, size_t num_powers,
                                      const char* append_gate, gst_design** out);
GSTKIT_API gst_status gst_design_test(const char* const* gates, size_t num_gates, int length, int num_random,
                                      uint64_t seed, gst_design** out);
GSTKIT_API gst_status gst_design_load(const char* path, gst_design** out);
GSTKIT_API gst_status gst_design_save(const gst_design* design, const char* path);
GSTKIT_API gst_status gst_design_size(const gst_design* design, size_t* out);
GSTKIT_API void gst_design_free(gst_design* design);

/* ---- datasets ---- */

GSTKIT_API gst_status gst_dataset_simulate(const gst_gateset* gs, const gst_design* design, long long n_total,
                                           uint64_t seed, gst_dataset** out);
GSTKIT_API gst_status gst_dataset_load(const char* path, gst_dataset** out);
GSTKIT_API gst_status gst_dataset_save(const gst_dataset* ds, const char* path);
GSTKIT_API gst_status gst_dataset_merge(const gst_dataset* a, const gst_dataset* b, gst_dataset** out);
GSTKIT_API gst_status gst_dataset_size(const gst_dataset* ds, size_t* out);
GSTKIT_API gst_status gst_dataset_counts(const gst_dataset* ds, const char* sequence_key, long long* n_plus,
                                         long long* n_total);
GSTKIT_API void gst_dataset_free(gst_dataset* ds);

/* ---- estimation ---- */

typedef struct gst_lgst_diagnostics {
  double condition_number;
  double min_singular_value;
  int rank;
  int ill_conditioned; /* condition number above the warning threshold */
} gst_lgst_diagnostics;

/* gates may be NULL to use every SANDWICH gate label G1..G4 of the default
   qubit set. */
GSTKIT_API gst_status gst_fit_lgst(const gst_dataset* ds, const gst_design* design, const char* const* gates,
                                   size_t num_gates, gst_gateset** out, gst_lgst_diagnostics* diagnostics);

/* Standard tomography assuming the fiducial frame of `frame`. */
GSTKIT_API gst_status gst_fit_standard(const gst_dataset* ds, const gst_design* design, const gst_gateset* frame,
                                       gst_gateset** out);

typedef struct gst_mle_options {
  double floor;
  double tol; /* <= 0: 1e-6 * sqrt(#params) */
  int max_iterations;
  double delta;
  int project;
  int staged;
} gst_mle_options;

typedef struct gst_fit_report {
  double initial_nll;
  double final_nll;
  int iterations;
  double gradient_norm;
  int clip_events;
  int converged;
  int feasible_start;
  int stages;
} gst_fit_report;

GSTKIT_API void gst_mle_options_default(gst_mle_options* options);
GSTKIT_API gst_status gst_fit_mle(const gst_gateset* seed, const gst_dataset* ds, const gst_mle_options* options,
                                  gst_gateset** out, gst_fit_report* report);
GSTKIT_API gst_status gst_neg_log_likelihood(const gst_gateset* gs, const gst_dataset* ds, double floor,
                                             double* value, int* clip_events);

/* ---- gauge ---- */

typedef struct gst_gauge_report {
  double discrepancy_before;
  double discrepancy_after;
  double det_m;
  double invariance_error;
  int iterations;
  int converged;
} gst_gauge_report;

GSTKIT_API gst_status gst_gauge_optimize(const gst_gateset* estimate, const gst_gateset* target, double spam_weight,
                                         gst_gateset** out, gst_gauge_report* report);

/* ---- scoring ---- */

/* Scores each estimate on the test data. report_json receives
   {"epsilon":..,"estimates":{name:{..}}}; csv receives rows
   "L,estimate,mean_per_count_score". Either output may be NULL. */
GSTKIT_API gst_status gst_score(const gst_gateset* const* estimates, const char* const* names, size_t num_estimates,
                                const gst_dataset* test_data, const gst_design* design, double epsilon,
                                char** report_json, char** csv);

/* ---- full pipeline ---- */

typedef struct gst_demo_options {
  uint64_t seed;
  long long n_train;
  long long n_test;
  double epsilon;
  double frame_miscalibration;
} gst_demo_options;

GSTKIT_API void gst_demo_options_default(gst_demo_options* options);
GSTKIT_API gst_status gst_demo_run(const gst_demo_options* options, const char* out_dir);

#ifdef __cplusplus
}  /* extern "C" */
#endif

#endif  /* GSTKIT_GSTKIT_H_ */
