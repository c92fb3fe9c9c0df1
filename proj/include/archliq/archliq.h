/*
 * archliq: simulation and moment-based estimation for ARCH(1) processes
 * driven by an exogenous stationary liquidity term,
 *
 *   X_t = sigma_t eps_t,   sigma_t^2 = alpha0 + alpha1 X_{t-1}^2 + l1 L_{t-1}.
 *
 * Plain C interface. Every fallible call returns an archliq_status; on
 * failure archliq_last_error() describes the problem (thread-local, valid
 * until the next failing call on the same thread). Handles are opaque and
 * released with the matching *_free function; passing NULL to *_free is a
 * no-op.
 */
#ifndef ARCHLIQ_H
#define ARCHLIQ_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ARCHLIQ_BUILDING_LIBRARY)
#    define ARCHLIQ_API __declspec(dllexport)
#  else
#    define ARCHLIQ_API __declspec(dllimport)
#  endif
#else
#  define ARCHLIQ_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum archliq_status {
    ARCHLIQ_OK = 0,
    ARCHLIQ_E_INVALID_ARGUMENT = 1,
    ARCHLIQ_E_REGIME = 2,
    ARCHLIQ_E_GENERATION = 3,
    ARCHLIQ_E_SIMULATION = 4,
    ARCHLIQ_E_DIMENSION = 5,
    ARCHLIQ_E_COVARIANCE = 6,
    ARCHLIQ_E_UNIDENTIFIABLE = 7,
    ARCHLIQ_E_CONFIG = 8,
    ARCHLIQ_E_IO = 9,
    ARCHLIQ_E_INTERNAL = 10
} archliq_status;

ARCHLIQ_API const char* archliq_version(void);
ARCHLIQ_API const char* archliq_status_string(archliq_status status);
ARCHLIQ_API const char* archliq_last_error(void);

typedef struct archliq_params {
    double alpha0;
    double alpha1;
    double l1;
} archliq_params;

/* Moments of the innovation: E eps^4, E eps^6, E eps^8, Var eps^2. */
typedef struct archliq_noise_moments {
    double e4;
    double e6;
    double e8;
    double var_eps_sq;
} archliq_noise_moments;

/* "gaussian" or "moments:e4=..,e6=..,e8=..". */
ARCHLIQ_API archliq_status archliq_noise_parse(const char* spec, archliq_noise_moments* out);

/* ---- liquidity ---------------------------------------------------------- */

typedef struct archliq_liquidity archliq_liquidity;

/* "fgn:H=0.333", "poisson:lambda=1" or "white". */
ARCHLIQ_API archliq_status archliq_liquidity_parse(const char* spec, archliq_liquidity** out);
ARCHLIQ_API void archliq_liquidity_free(archliq_liquidity* liq);
/* Autocovariance s(lag) of L (lag may be negative). */
ARCHLIQ_API archliq_status archliq_liquidity_autocovariance(const archliq_liquidity* liq,
                                                            long lag, double* out);

/* ---- simulation --------------------------------------------------------- */

typedef struct archliq_path archliq_path;

/* Forward recursion from X_0^2 = init_x_squared; returns n points after
 * discarding burn_in. Replication stream (master_seed, stream_index). */
ARCHLIQ_API archliq_status archliq_simulate(const archliq_params* params,
                                            const archliq_liquidity* liq, uint64_t master_seed,
                                            uint64_t stream_index, size_t n,
                                            double init_x_squared, size_t burn_in,
                                            archliq_path** out);
ARCHLIQ_API void archliq_path_free(archliq_path* path);
ARCHLIQ_API size_t archliq_path_length(const archliq_path* path);
/* Borrowed pointers, valid until archliq_path_free. */
ARCHLIQ_API const double* archliq_path_x_squared(const archliq_path* path);
ARCHLIQ_API const double* archliq_path_sigma_squared(const archliq_path* path);
ARCHLIQ_API const double* archliq_path_liquidity(const archliq_path* path);
/* Columns t, x_squared, sigma_squared, liquidity. */
ARCHLIQ_API archliq_status archliq_path_write_csv(const archliq_path* path, const char* file);

/* ---- series input ------------------------------------------------------- */

typedef struct archliq_series archliq_series;

/* Reads the x_squared column of a CSV with header (or its first column). */
ARCHLIQ_API archliq_status archliq_series_read_csv(const char* file, archliq_series** out);
ARCHLIQ_API void archliq_series_free(archliq_series* series);
ARCHLIQ_API size_t archliq_series_length(const archliq_series* series);
ARCHLIQ_API const double* archliq_series_data(const archliq_series* series);

/* ---- autocovariance ----------------------------------------------------- */

typedef struct archliq_acf archliq_acf;

ARCHLIQ_API archliq_status archliq_acf_compute(const double* x_squared, size_t n, size_t max_lag,
                                               archliq_acf** out);
ARCHLIQ_API void archliq_acf_free(archliq_acf* acf);
ARCHLIQ_API size_t archliq_acf_max_lag(const archliq_acf* acf);
ARCHLIQ_API double archliq_acf_gamma(const archliq_acf* acf, size_t lag);
ARCHLIQ_API double archliq_acf_mean(const archliq_acf* acf);
ARCHLIQ_API double archliq_acf_second_moment(const archliq_acf* acf);
/* Columns lag, gamma_hat. */
ARCHLIQ_API archliq_status archliq_acf_write_csv(const archliq_acf* acf, const char* file);

/* ---- estimation --------------------------------------------------------- */

typedef enum archliq_estimate_status {
    ARCHLIQ_ESTIMATE_REAL = 0,
    ARCHLIQ_ESTIMATE_COMPLEX_DISCARDED = 1,
    ARCHLIQ_ESTIMATE_DEGENERATE_LINEAR = 2
} archliq_estimate_status;

typedef enum archliq_root_choice {
    ARCHLIQ_ROOT_PLUS = 0,
    ARCHLIQ_ROOT_MINUS = 1,
    ARCHLIQ_ROOT_LINEAR = 2,
    ARCHLIQ_ROOT_NONE = 3
} archliq_root_choice;

typedef struct archliq_estimate {
    archliq_estimate_status status;
    archliq_root_choice chosen_root;
    /* NaN when status == ARCHLIQ_ESTIMATE_COMPLEX_DISCARDED. */
    double alpha0_hat;
    double alpha1_hat;
    double l1_hat;
    double discriminant;
} archliq_estimate;

/* Single-lag estimator on an observed X^2 series. */
ARCHLIQ_API archliq_status archliq_estimate_single_lag(const double* x_squared, size_t n,
                                                       const archliq_liquidity* liq, long lag,
                                                       const archliq_noise_moments* noise,
                                                       archliq_estimate* out);
/* Two-lag estimator; needs s(lag2) != 0. */
ARCHLIQ_API archliq_status archliq_estimate_two_lag(const double* x_squared, size_t n,
                                                    const archliq_liquidity* liq, long lag1,
                                                    long lag2, const archliq_noise_moments* noise,
                                                    archliq_estimate* out);
/* One-row CSV: alpha0_hat, alpha1_hat, l1_hat, status, chosen_root, discriminant. */
ARCHLIQ_API archliq_status archliq_estimate_write_csv(const archliq_estimate* est,
                                                      const char* file);
ARCHLIQ_API const char* archliq_estimate_status_string(archliq_estimate_status status);
ARCHLIQ_API const char* archliq_root_choice_string(archliq_root_choice choice);

/* ---- experiments -------------------------------------------------------- */

typedef struct archliq_config archliq_config;

/* Default configuration (model 1, 0.1, 0.5 with fGn H = 1/3 liquidity). */
ARCHLIQ_API archliq_status archliq_config_new(archliq_config** out);
ARCHLIQ_API archliq_status archliq_config_load(const char* file, archliq_config** out);
ARCHLIQ_API void archliq_config_free(archliq_config* cfg);
/* Overrides one key with the config-file syntax. */
ARCHLIQ_API archliq_status archliq_config_set(archliq_config* cfg, const char* key,
                                              const char* value);
ARCHLIQ_API archliq_status archliq_config_params(const archliq_config* cfg, archliq_params* out);
/* Borrowed string, valid until the next call on cfg. */
ARCHLIQ_API const char* archliq_config_get(const archliq_config* cfg, const char* key);

typedef struct archliq_experiment archliq_experiment;

typedef struct archliq_summary_row {
    size_t sample_size;
    size_t replications;
    size_t n_real;
    size_t n_degenerate;
    size_t n_complex;
    double pct_complex;
    /* Index 0 = alpha0, 1 = alpha1, 2 = l1. Mean/sd are NaN when absent. */
    double mean[3];
    double sd[3];
    double pct_in_interval[3];
} archliq_summary_row;

ARCHLIQ_API archliq_status archliq_experiment_run(const archliq_config* cfg,
                                                  archliq_experiment** out);
ARCHLIQ_API void archliq_experiment_free(archliq_experiment* exp);
ARCHLIQ_API size_t archliq_experiment_summary_count(const archliq_experiment* exp);
ARCHLIQ_API archliq_status archliq_experiment_summary(const archliq_experiment* exp, size_t index,
                                                      archliq_summary_row* out);
/* raw.csv, summary.csv, hist_<param>_<N>.csv. */
ARCHLIQ_API archliq_status archliq_experiment_write(const archliq_experiment* exp,
                                                    const char* dir);

/* ---- noise diagnostics -------------------------------------------------- */

/* Empirical vs theoretical autocovariance at lags 0..max_lag of n raw noise
 * draws. The empirical side is (1/n) sum x_t x_{t+k}, using the known zero
 * mean. kind is "fgn" (param = H), "poisson" (param = lambda) or
 * "gaussian" (param ignored). Both output arrays hold max_lag + 1 values. */
ARCHLIQ_API archliq_status archliq_noise_check(const char* kind, double param, size_t n,
                                               size_t max_lag, uint64_t seed, double* empirical,
                                               double* theoretical);

#ifdef __cplusplus
}
#endif

#endif /* ARCHLIQ_H */
