/*
 * C interface to the extremefim library: Fisher information, Cramer-Rao
 * bounds and maximum-likelihood estimators for data compressed to
 * per-interval minima and maxima.
 *
 * Every function returns an efim_status; EFIM_OK is zero. On failure the
 * message of the most recent error on the calling thread is available from
 * efim_last_error(). Handles are opaque and owned by the caller, who must
 * release them with the matching *_destroy function.
 */
#ifndef EXTREMEFIM_H
#define EXTREMEFIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(EXTREMEFIM_BUILDING_LIBRARY)
#    define EFIM_API __declspec(dllexport)
#  else
#    define EFIM_API __declspec(dllimport)
#  endif
#else
#  define EFIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum efim_status {
    EFIM_OK = 0,
    EFIM_E_PARAMETER = 1,
    EFIM_E_SHAPE = 2,
    EFIM_E_DOMAIN = 3,
    EFIM_E_SOLVER = 4,
    EFIM_E_NUMERIC = 5,
    EFIM_E_UNSUPPORTED = 6,
    EFIM_E_DEGENERATE = 7,
    EFIM_E_OPTIMIZER = 8,
    EFIM_E_IO = 9,
    EFIM_E_UNDEFINED_BOUND = 10,
    EFIM_E_PARSE = 11,
    EFIM_E_NULL_ARGUMENT = 100,
    EFIM_E_INTERNAL = 101
} efim_status;

typedef enum efim_variant {
    EFIM_VARIANT_OPT = 0,
    EFIM_VARIANT_PARTIAL = 1,
    EFIM_VARIANT_MIN = 2,
    EFIM_VARIANT_MAX = 3,
    EFIM_VARIANT_MIX = 4
} efim_variant;

typedef enum efim_method {
    EFIM_METHOD_CLOSED_FORM = 0,
    EFIM_METHOD_PLUG_IN = 1,
    EFIM_METHOD_QUADRATURE = 2
} efim_method;

typedef enum efim_sign_class {
    EFIM_SIGN_MAX_FAVORED = 0,
    EFIM_SIGN_MIN_FAVORED = 1,
    EFIM_SIGN_BALANCED = 2
} efim_sign_class;

typedef struct efim_model efim_model;
typedef struct efim_dataset efim_dataset;
typedef struct efim_study efim_study;

typedef struct efim_fim {
    efim_variant variant;
    int L;
    efim_method method;
    double value;
    int N;
    int K;
    double theta;
    int low_accuracy;
    int breakdown;
    double error_estimate;
} efim_fim;

typedef struct efim_astat {
    double value;
    efim_sign_class sign_class;
    int K;
    double theta;
    double j_plugin_min;
    double j_plugin_max;
} efim_astat;

typedef struct efim_estimate {
    efim_variant variant;
    int L;
    double theta_hat;
    int has_optimizer;
    int iterations;
    double bracket_lo;
    double bracket_hi;
    int converged;
    double loglik_at_opt;
    int expansions;
    int has_min_without_k_factor;
    double min_without_k_factor;
} efim_estimate;

typedef struct efim_study_row {
    int K;
    efim_variant variant;
    int L;
    double mean_theta_hat;
    double mean_bias;
    double var_theta_hat;
    double inv_var_normalized;
    int has_crlb_closed;
    double crlb_closed;
    int has_crlb_plugin;
    double crlb_plugin;
    int has_crlb_quadrature;
    double crlb_quadrature;
} efim_study_row;

typedef struct efim_probe_row {
    int K;
    double var_ymax;
    double mean_ratio;
    double mean_ymax;
} efim_probe_row;

/* Errors ----------------------------------------------------------------- */

/* Message of the last failure on this thread; "" if none. */
EFIM_API const char* efim_last_error(void);
EFIM_API const char* efim_status_string(efim_status status);

/* Models ----------------------------------------------------------------- */

/* Comma-separated list of accepted model names. */
EFIM_API const char* efim_supported_models(void);
EFIM_API efim_status efim_model_create(const char* name, efim_model** out);
EFIM_API void efim_model_destroy(efim_model* model);
EFIM_API const char* efim_model_name(const efim_model* model);

EFIM_API efim_status efim_pdf(const efim_model* model, double x, double theta, double* out);
EFIM_API efim_status efim_cdf(const efim_model* model, double x, double theta, double* out);
EFIM_API efim_status efim_characteristic_values(const efim_model* model, double theta, int K,
                                                double* mu1, double* muK);

/* Fisher information ----------------------------------------------------- */

EFIM_API efim_status efim_fim_opt(const efim_model* model, double theta, int N, int K,
                                  efim_fim* out);
EFIM_API efim_status efim_fim_partial(const efim_model* model, double theta, int N, int K, int L,
                                      efim_fim* out);
EFIM_API efim_status efim_fim_min_exact(const efim_model* model, double theta, int N, int K,
                                        efim_fim* out);
/* kind: EFIM_VARIANT_MIN, _MAX or _MIX. */
EFIM_API efim_status efim_fim_plugin(const efim_model* model, efim_variant kind, double theta,
                                     int N, int K, efim_fim* out);
EFIM_API efim_status efim_fim_quadrature(const efim_model* model, efim_variant kind,
                                         double theta, int N, int K, efim_fim* out);
EFIM_API efim_status efim_crlb(const efim_fim* fim, double* out);
EFIM_API efim_status efim_l_equivalent(const efim_fim* fim, double* out);
EFIM_API efim_status efim_a_statistic(const efim_model* model, double theta, int K,
                                      efim_astat* out);

/* Data and estimators ---------------------------------------------------- */

EFIM_API efim_status efim_dataset_create(int K, const double* y_min, const double* y_max,
                                         size_t n, efim_dataset** out);
/* Reads an interval_id,y_min,y_max CSV log. */
EFIM_API efim_status efim_dataset_read_csv(const char* path, int K, efim_dataset** out);
EFIM_API void efim_dataset_destroy(efim_dataset* dataset);
EFIM_API size_t efim_dataset_size(const efim_dataset* dataset);
EFIM_API int efim_dataset_group_size(const efim_dataset* dataset);

/* variant: EFIM_VARIANT_MIN, _MAX or _MIX. */
EFIM_API efim_status efim_estimate_extremes(const efim_dataset* dataset, efim_variant variant,
                                            efim_estimate* out);
/* Row-major rows x cols raw samples; variant OPT or PARTIAL (with L). */
EFIM_API efim_status efim_estimate_samples(const double* values, size_t rows, size_t cols,
                                           efim_variant variant, int L, efim_estimate* out);

/* Simulation studies ----------------------------------------------------- */

/* Defaults: theta 1, N 100, trials 10000, K list 5..100, variants opt/min/max/mix,
 * exponential model. The seed has no default and must be set before running. */
EFIM_API efim_status efim_study_create(efim_study** out);
EFIM_API void efim_study_destroy(efim_study* study);
EFIM_API efim_status efim_study_set_theta(efim_study* study, double theta);
EFIM_API efim_status efim_study_set_n(efim_study* study, int N);
EFIM_API efim_status efim_study_set_trials(efim_study* study, int trials);
EFIM_API efim_status efim_study_set_seed(efim_study* study, uint64_t seed);
EFIM_API efim_status efim_study_set_threads(efim_study* study, unsigned threads);
EFIM_API efim_status efim_study_set_k_list(efim_study* study, const int* K, size_t n);
/* Ls is consulted for EFIM_VARIANT_PARTIAL entries only; it may be NULL otherwise. */
EFIM_API efim_status efim_study_set_variants(efim_study* study, const efim_variant* variants,
                                             const int* Ls, size_t n);
EFIM_API efim_status efim_study_set_model(efim_study* study, const efim_model* model);
EFIM_API efim_status efim_study_run(efim_study* study);
EFIM_API size_t efim_study_row_count(const efim_study* study);
EFIM_API efim_status efim_study_get_row(const efim_study* study, size_t index, efim_study_row* out);
EFIM_API efim_status efim_study_write_csv(const efim_study* study, const char* path);
EFIM_API efim_status efim_study_write_json(const efim_study* study, const char* path);

/* Empirical extreme-value convergence: fills out[0..n_K). */
EFIM_API efim_status efim_convergence_probe(const efim_model* model, double theta,
                                            const int* K, size_t n_K, int replicates,
                                            uint64_t seed, efim_probe_row* out);

#ifdef __cplusplus
}
#endif

#endif /* EXTREMEFIM_H */
