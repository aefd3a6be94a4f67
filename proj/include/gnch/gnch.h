#ifndef GNCH_GNCH_H
#define GNCH_GNCH_H

#include <stddef.h>
#include <stdint.h>

#if defined(GNCH_BUILDING_LIBRARY)
#define GNCH_API __attribute__((visibility("default")))
#else
#define GNCH_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum gnch_status {
  GNCH_OK = 0,
  GNCH_ERR_PARAM = 1,
  GNCH_ERR_DOMAIN = 2,
  GNCH_ERR_INDEX = 3,
  GNCH_ERR_SINGULAR = 4,
  GNCH_ERR_TURNING_POINT = 5,
  GNCH_ERR_BRANCH_CROSSING = 6,
  GNCH_ERR_CONVERGENCE = 7,
  GNCH_ERR_INVALID_STATE = 8,
  GNCH_ERR_PARSE = 9,
  GNCH_ERR_NULL_ARGUMENT = 10,
  GNCH_ERR_INTERNAL = 11
} gnch_status;

/* A moment system in float or exact arithmetic. */
typedef struct gnch_system gnch_system;
/* A reconstructed peakon state at one time, possibly invalid. */
typedef struct gnch_state gnch_state;

/* Message of the last failing call on this thread; "" if none. */
GNCH_API const char* gnch_last_error(void);
GNCH_API const char* gnch_status_name(gnch_status status);
GNCH_API const char* gnch_version(void);

/* Every char* handed out by the library is released with this. */
GNCH_API void gnch_string_free(char* s);

/* After GNCH_ERR_TURNING_POINT: last valid time and estimated singular time. */
GNCH_API void gnch_last_turning_point(double* last_valid_t, double* singular_t);

GNCH_API gnch_status gnch_system_create(double r, double s, const double* lambda, const double* a0, size_t n,
                                        gnch_system** out);

/* Values as "p/q", integer or decimal strings. phi0 may be NULL (all 1). */
GNCH_API gnch_status gnch_system_create_exact(const char* r, const char* s, const char* const* lambda,
                                              const char* const* phi0, size_t n, gnch_system** out);

/* (r, s) of a named preset: "ch", "noniso" or "mixed". */
GNCH_API gnch_status gnch_preset_params(const char* preset, double* r, double* s);

/* preset is "ch", "noniso" or "mixed". In exact mode every a0 must be 0. */
GNCH_API gnch_status gnch_system_create_preset(const char* preset, const double* lambda, const double* a0, size_t n,
                                               int exact, gnch_system** out);

GNCH_API gnch_status gnch_system_from_json(const char* json, int exact, gnch_system** out);
GNCH_API gnch_status gnch_system_to_json(const gnch_system* sys, char** out);
GNCH_API int gnch_system_is_exact(const gnch_system* sys);
GNCH_API size_t gnch_system_size(const gnch_system* sys);
GNCH_API void gnch_system_free(gnch_system* sys);

/* Expand "t0:t1:n" (n evenly spaced points, ends included) or "a,b,c" into a
   list of time strings, newline separated. Exact systems get exact points. */
GNCH_API gnch_status gnch_grid_expand(const char* spec, int exact, char** out);

/* t is a number string; exact systems parse it exactly. */
GNCH_API gnch_status gnch_state_at(const gnch_system* sys, const char* t, gnch_state** out);
GNCH_API int gnch_state_valid(const gnch_state* st);
GNCH_API const char* gnch_state_reason(const gnch_state* st);
GNCH_API size_t gnch_state_size(const gnch_state* st);
GNCH_API gnch_status gnch_state_positions(const gnch_state* st, double* x, size_t n);
GNCH_API gnch_status gnch_state_amplitudes(const gnch_state* st, double* m, size_t n);
GNCH_API gnch_status gnch_state_eval_u(const gnch_state* st, double x, double* u);
GNCH_API gnch_status gnch_state_to_json(const gnch_state* st, char** out);
/* String eigenvalues as a JSON array; "p/q" strings for exact states. */
GNCH_API gnch_status gnch_state_eigenvalues(const gnch_state* st, char** out);
/* "x,u" rows on n points of [x0, x1] plus the peak positions. */
GNCH_API gnch_status gnch_state_profile_csv(const gnch_state* st, double x0, double x1, size_t n, char** out);
GNCH_API void gnch_state_free(gnch_state* st);

/* Sweep over a time grid. rows_csv: "t,x1..xN,m1..mN,valid". When grid is
   non-NULL, profile_csv receives "t,x,u" rows for every valid time. */
GNCH_API gnch_status gnch_eval_sweep(const gnch_system* sys, const char* times, const char* grid, int as_json,
                                     char** rows, char** profile_csv, size_t* n_invalid);

typedef struct gnch_battery_options {
  size_t trials;
  size_t max_n;
  int max_k;
  uint64_t seed;
  int inject_fault;
} gnch_battery_options;

GNCH_API void gnch_battery_options_default(gnch_battery_options* opts);
GNCH_API gnch_status gnch_identities_run(const gnch_battery_options* opts, char** report_json, int* all_zero);

/* Derivative rules and moment law on an exact system for 1 <= k <= kmax,
   0 <= l <= lmax. */
GNCH_API gnch_status gnch_derivative_check(const gnch_system* sys, int kmax, int lmax, char** report_json,
                                           int* all_zero);

/* RK4 from the closed form at t0 to t1. trajectory_csv may be NULL. */
GNCH_API gnch_status gnch_ode_compare(const gnch_system* sys, double t0, double t1, size_t steps, char** report_json,
                                      double* max_dev, char** trajectory_csv);

/* Affine fit of the sorted eigenvalue branches; max_slope_error = max |slope + r|. */
GNCH_API gnch_status gnch_spectrum_drift(const gnch_system* sys, const double* times, size_t n, char** report_json,
                                         double* max_slope_error);

/* Figure 1 or 2 profiles as "t,x,u" on n points of [x0, x1] plus the peaks. */
GNCH_API gnch_status gnch_figure_csv(int fig, double x0, double x1, size_t n, char** out);

#ifdef __cplusplus
}
#endif

#endif
