/*
 * tentlab C API.
 *
 * Every fallible call returns a tl_status; on failure a description is
 * available from tl_last_error() on the calling thread. Numbers cross the
 * boundary as text in the backend's serialization ("0.75", "6/13",
 * fixed-point decimal) so exact values survive. Result objects are opaque
 * handles released with their matching *_free function; strings returned by
 * accessors stay valid until the owning handle is freed.
 */
#ifndef TENTLAB_TENTLAB_H
#define TENTLAB_TENTLAB_H

#include <stddef.h>

#if defined(TENTLAB_BUILDING_LIBRARY)
#define TENTLAB_API __attribute__((visibility("default")))
#else
#define TENTLAB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tl_status {
  TL_OK = 0,
  TL_ERR_INVALID_ARGUMENT = 1,
  TL_ERR_PARSE = 2,
  TL_ERR_BACKEND_MISMATCH = 3,
  TL_ERR_OUT_OF_DOMAIN = 4,
  TL_ERR_UNSUPPORTED = 5,
  TL_ERR_NO_CONVERGENCE = 6,
  TL_ERR_INTERNAL = 100
} tl_status;

typedef enum tl_backend_kind { TL_BINARY64 = 0, TL_RATIONAL = 1, TL_DECIMAL = 2 } tl_backend_kind;

typedef struct tl_backend {
  tl_backend_kind kind;
  int precision_digits; /* decimal only; >= 10 */
} tl_backend;

typedef enum tl_outcome_kind {
  TL_CYCLE_LOW = 0,
  TL_CYCLE_HIGH = 1,
  TL_FIXED_POINT = 2,
  TL_UNRESOLVED = 3
} tl_outcome_kind;

typedef struct tl_escape_criteria {
  double flat_tol;
  double jump_tol;
  size_t min_flat;
} tl_escape_criteria;

typedef struct tl_escape {
  size_t flat_start;
  size_t flat_end;
  size_t escape_index;
  double flat_value;
  double terminal_value;
} tl_escape;

typedef struct tl_eigen {
  double lambda_u;
  double lambda_s;
  double v_u[2];
  double v_s[2];
  double a_u;
  double a_s;
} tl_eigen;

typedef struct tl_sweep_config {
  const char* net; /* "uniform:N" or "triadic:m" */
  const char* h;
  const char* sigma;
  tl_backend backend;
  int k;
  size_t steps;
  double tolerance;
  unsigned threads; /* 0 = hardware concurrency */
} tl_sweep_config;

typedef struct tl_scalar tl_scalar;
typedef struct tl_series tl_series;
typedef struct tl_cycles tl_cycles;
typedef struct tl_coefficients tl_coefficients;
typedef struct tl_equilibria tl_equilibria;
typedef struct tl_sweep tl_sweep;

/* ---- library ---------------------------------------------------------- */

TENTLAB_API const char* tl_version(void);
TENTLAB_API const char* tl_last_error(void);
TENTLAB_API const char* tl_status_name(tl_status status);
/* "binary64", "rational", "decimal" or "decimal:<digits>". */
TENTLAB_API tl_status tl_parse_backend(const char* name, int default_digits, tl_backend* out);

/* ---- scalars ---------------------------------------------------------- */

TENTLAB_API tl_status tl_scalar_parse(const char* text, tl_backend backend, tl_scalar** out);
TENTLAB_API const char* tl_scalar_text(const tl_scalar* s);
TENTLAB_API double tl_scalar_value(const tl_scalar* s);
TENTLAB_API void tl_scalar_free(tl_scalar* s);

/* ---- series (orbits, starred sequences, recurrences) ------------------- */

TENTLAB_API size_t tl_series_size(const tl_series* s);
TENTLAB_API const char* tl_series_text(const tl_series* s, size_t i);
TENTLAB_API double tl_series_value(const tl_series* s, size_t i);
TENTLAB_API void tl_series_free(tl_series* s);

/* ---- tent map --------------------------------------------------------- */

TENTLAB_API tl_status tl_tent_step(const char* h, const char* x, tl_backend backend, int k, tl_scalar** out);
TENTLAB_API tl_status tl_orbit(const char* h, const char* x0, tl_backend backend, int k, size_t steps,
                               tl_series** out);
/* Writes n symbols plus a terminating NUL into `symbols` (capacity >= n + 1). */
TENTLAB_API tl_status tl_itinerary(const char* h, const char* x0, tl_backend backend, int n, char* symbols,
                                   tl_scalar** slope_product);
TENTLAB_API tl_status tl_chaotic_series(const char* h, tl_backend backend, size_t steps, tl_series** out);

/* ---- cycles ----------------------------------------------------------- */

TENTLAB_API tl_status tl_fixed_point(const char* h, tl_backend backend, tl_scalar** out);
TENTLAB_API tl_status tl_two_cycle(const char* h, tl_backend backend, tl_scalar** low, tl_scalar** high);
TENTLAB_API tl_status tl_enumerate_cycles(const char* h, tl_backend backend, int period, tl_cycles** out);
TENTLAB_API size_t tl_cycles_count(const tl_cycles* c);
TENTLAB_API int tl_cycles_period(const tl_cycles* c);
TENTLAB_API const char* tl_cycles_point_text(const tl_cycles* c, size_t cycle, size_t point);
TENTLAB_API double tl_cycles_point_value(const tl_cycles* c, size_t cycle, size_t point);
TENTLAB_API const char* tl_cycles_itinerary(const tl_cycles* c, size_t cycle);
TENTLAB_API const char* tl_cycles_multiplier_text(const tl_cycles* c, size_t cycle);
TENTLAB_API void tl_cycles_free(tl_cycles* c);
/* Fills up to `capacity` polynomial coefficients (descending degree) and
 * reports how many there are in *count. */
TENTLAB_API tl_status tl_onset_threshold(int period, double* threshold, long* coefficients, size_t capacity,
                                         size_t* count);

/* ---- stabilization ---------------------------------------------------- */

TENTLAB_API tl_status tl_build_coefficients(const char* sigma, tl_backend backend, tl_coefficients** out);
/* i in 0..5 selects a_1..a_6. */
TENTLAB_API const char* tl_coefficients_text(const tl_coefficients* c, size_t i);
TENTLAB_API double tl_coefficients_value(const tl_coefficients* c, size_t i);
TENTLAB_API const char* tl_coefficients_norm_text(const tl_coefficients* c);
TENTLAB_API void tl_coefficients_free(tl_coefficients* c);

TENTLAB_API tl_status tl_stabilize(const char* h, const char* x0, const tl_coefficients* coeffs, int k,
                                   size_t steps, tl_series** out);
TENTLAB_API tl_status tl_classify_value(const char* h, const char* value, tl_backend backend, double tolerance,
                                        tl_outcome_kind* kind, double* distance);
TENTLAB_API const char* tl_outcome_name(tl_outcome_kind kind);
TENTLAB_API tl_status tl_companion_spectrum(const tl_coefficients* coeffs, double mu, double magnitudes[6],
                                            double* spectral_radius);
TENTLAB_API tl_status tl_classify_equilibria(const char* h, int k, const tl_coefficients* coeffs,
                                             int include_boundary, tl_equilibria** out);
TENTLAB_API size_t tl_equilibria_count(const tl_equilibria* e);
TENTLAB_API const char* tl_equilibria_point_text(const tl_equilibria* e, size_t i);
TENTLAB_API const char* tl_equilibria_slope_text(const tl_equilibria* e, size_t i);
TENTLAB_API double tl_equilibria_spectral_radius(const tl_equilibria* e, size_t i);
TENTLAB_API int tl_equilibria_stable(const tl_equilibria* e, size_t i);
TENTLAB_API int tl_equilibria_boundary(const tl_equilibria* e, size_t i);
TENTLAB_API void tl_equilibria_free(tl_equilibria* e);

/* ---- experiments ------------------------------------------------------ */

TENTLAB_API tl_status tl_sweep_run(const tl_sweep_config* config, tl_sweep** out);
TENTLAB_API size_t tl_sweep_size(const tl_sweep* s);
TENTLAB_API const char* tl_sweep_x0_text(const tl_sweep* s, size_t i);
TENTLAB_API const char* tl_sweep_final_text(const tl_sweep* s, size_t i);
TENTLAB_API tl_outcome_kind tl_sweep_outcome(const tl_sweep* s, size_t i);
TENTLAB_API double tl_sweep_distance(const tl_sweep* s, size_t i);
TENTLAB_API size_t tl_sweep_count(const tl_sweep* s, tl_outcome_kind kind);
TENTLAB_API void tl_sweep_free(tl_sweep* s);

/* `criteria` may be NULL for the defaults (1e-9, 1e-3, 30). *found is set to
 * 0 when the series has no escape. */
TENTLAB_API tl_status tl_detect_escape(const tl_series* series, const tl_escape_criteria* criteria, int* found,
                                       tl_escape* out);
/* `criteria` may be NULL for the defaults (1e-40, 1e-2, 30). */
TENTLAB_API tl_status tl_sqrt2_experiment(const char* h_digits, int precision, size_t steps,
                                          const tl_escape_criteria* criteria, tl_series** orbit,
                                          tl_scalar** reference, int* found, tl_escape* escape);

/* ---- Fibonacci recurrence ---------------------------------------------- */

TENTLAB_API tl_status tl_recurrence(const char* x0, const char* x1, tl_backend backend, size_t n,
                                    tl_series** out);
TENTLAB_API tl_status tl_eigen_basis(tl_eigen* out);
TENTLAB_API tl_status tl_decompose(const char* x0, const char* x1, tl_backend backend, tl_eigen* out);
TENTLAB_API tl_status tl_predict_escape(const char* x0, const char* x1, tl_backend backend, double threshold,
                                        int* found, long* index);
TENTLAB_API tl_status tl_first_exceedance(const tl_series* series, double threshold, int* found, size_t* index);

#ifdef __cplusplus
}
#endif

#endif /* TENTLAB_TENTLAB_H */
