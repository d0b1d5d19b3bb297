#ifndef KSUM_H
#define KSUM_H

/* C interface to the Kepler summation library. Numbers cross the boundary as decimal
 * strings so that no precision is lost; inputs accept expressions such as "9/10",
 * "3pi/4" or "100/sqrt(199)". Strings returned through char** are owned by the caller
 * and released with ksum_string_free. On failure a function returns a nonzero status
 * and ksum_last_error() describes it (per thread). */

#include <stddef.h>

#if defined(_WIN32)
#  if defined(KSUM_BUILDING)
#    define KSUM_API __declspec(dllexport)
#  else
#    define KSUM_API __declspec(dllimport)
#  endif
#elif defined(__GNUC__) && __GNUC__ >= 4
#  define KSUM_API __attribute__((visibility("default")))
#else
#  define KSUM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ksum_status {
  KSUM_OK = 0,
  KSUM_ERR_CONFIG = 1,
  KSUM_ERR_DOMAIN = 2,
  KSUM_ERR_RANGE = 3,
  KSUM_ERR_NUMERICAL = 4,
  KSUM_ERR_DEGENERATE_TERM = 5,
  KSUM_ERR_FIT = 6,
  KSUM_ERR_PARSE = 7,
  KSUM_ERR_IO = 8,
  KSUM_ERR_ARGUMENT = 9,
  KSUM_ERR_INTERNAL = 10
} ksum_status;

typedef enum ksum_transform {
  KSUM_LEVIN_D = 0,
  KSUM_WENIGER_DELTA = 1
} ksum_transform;

typedef enum ksum_indexing {
  KSUM_INDEXING_TABULATED = 0, /* the convention of the published tables for each transform */
  KSUM_INDEXING_ZERO_BASED = 1,
  KSUM_INDEXING_ONE_BASED = 2
} ksum_indexing;

typedef enum ksum_format {
  KSUM_FORMAT_CSV = 0,
  KSUM_FORMAT_JSON = 1
} ksum_format;

typedef struct ksum_context ksum_context;
typedef struct ksum_debye ksum_debye;
typedef struct ksum_report ksum_report;

typedef struct ksum_run_config {
  int precision_digits;
  ksum_format format;
  const char* output_path; /* NULL or "": ./<target>.<csv|json> */
  int print_digits;        /* 0: the published table precision */
} ksum_run_config;

#define KSUM_SELFCHECK_CORRUPT_DEBYE_ROW 1u

KSUM_API const char* ksum_version(void);
KSUM_API const char* ksum_last_error(void);
KSUM_API const char* ksum_status_name(ksum_status status);
KSUM_API void ksum_string_free(char* text);

/* flag_digits <= 0 means "not given"; then KEPLER_PRECISION, then 250. */
KSUM_API ksum_status ksum_resolve_precision(int flag_digits, int* out_digits);

KSUM_API ksum_status ksum_parse_transform(const char* name, ksum_transform* out);

KSUM_API ksum_status ksum_context_create(int precision_digits, ksum_context** out);
KSUM_API void ksum_context_destroy(ksum_context* ctx);
KSUM_API int ksum_context_digits(const ksum_context* ctx);

/* Eccentric anomaly psi with M = psi - eps sin psi, printed to `significant` digits. */
KSUM_API ksum_status ksum_solve_newton(const ksum_context* ctx, const char* eps, const char* mean_anomaly,
                                       int significant, char** out_psi);
KSUM_API ksum_status ksum_solve_series(const ksum_context* ctx, const char* eps, const char* mean_anomaly,
                                       ksum_transform kind, int order, ksum_indexing indexing, int significant,
                                       char** out_psi);

/* CSV eps,M,kind,alpha,nu,residual for every (M, eps, kind) cell, fits over orders 1..order. */
KSUM_API ksum_status ksum_rates_csv(const ksum_context* ctx, const char* const* mean_anomalies, size_t m_count,
                                    const char* const* eccentricities, size_t eps_count,
                                    const ksum_transform* kinds, size_t kind_count, int order, char** out_csv);

KSUM_API ksum_status ksum_debye_create(int k_max, ksum_debye** out);
KSUM_API void ksum_debye_destroy(ksum_debye* table);
KSUM_API int ksum_debye_k_max(const ksum_debye* table);
KSUM_API ksum_status ksum_debye_eval(const ksum_context* ctx, const ksum_debye* table, int k, const char* t,
                                     int significant, char** out_value);
KSUM_API ksum_status ksum_debye_json(const ksum_debye* table, char** out_json);
/* *out_k is the first k violating the ratio law of leading coefficients, or -1. */
KSUM_API ksum_status ksum_debye_ratio_law(const ksum_debye* table, int* out_k);

/* Debye series of J_n(n eps): CSV order,partial_sum,levin_d,weniger_delta for orders
 * 1..order, row r holding the partial sum through term r-1. */
KSUM_API ksum_status ksum_bessel_table_csv(const ksum_context* ctx, int n, const char* eps, int order,
                                           int significant, char** out_csv);

/* U(-log t, 1/sqrt(1-eps^2)) on t = i/grid, i = 1..grid; CSV t,x,u_value,order,eps. */
KSUM_API ksum_status ksum_u_scan_csv(const ksum_context* ctx, const char* eps, int order, ksum_transform kind,
                                     int grid, ksum_indexing indexing, char** out_csv);

/* Name of the i-th reproduction target, NULL past the end. */
KSUM_API const char* ksum_target_name(size_t index);

KSUM_API ksum_run_config ksum_run_config_default(void);

/* A mismatch against the printed digits is not an error: check ksum_report_passed. */
KSUM_API ksum_status ksum_reproduce(const ksum_run_config* cfg, const char* target, ksum_report** out);
KSUM_API ksum_status ksum_selfcheck(const ksum_run_config* cfg, unsigned flags, ksum_report** out);

KSUM_API int ksum_report_passed(const ksum_report* report);
KSUM_API int ksum_report_warnings(const ksum_report* report);
KSUM_API const char* ksum_report_summary(const ksum_report* report);
KSUM_API const char* ksum_report_artifact_path(const ksum_report* report);
KSUM_API void ksum_report_destroy(ksum_report* report);

#ifdef __cplusplus
}
#endif

#endif
