#ifndef PSU_PSU_H
#define PSU_PSU_H

/* C interface to the photon-sphere uniqueness toolkit.
 *
 * Every function returns a psu_status. On failure the message of the most
 * recent error on the calling thread is available from psu_last_error().
 * Handles are opaque and must be released with the matching _free call. */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(__GNUC__)
#define PSU_API __attribute__((visibility("default")))
#else
#define PSU_API
#endif

typedef enum psu_status {
  PSU_OK = 0,
  PSU_INVALID_ARGUMENT,
  PSU_DOMAIN_VIOLATION,
  PSU_ONE_SIDED_LIMIT,
  PSU_BUCHDAHL_VIOLATION,
  PSU_AUDIT_REFUSED,
  PSU_NOT_RIGID,
  PSU_NON_NULL_INITIAL_DATA,
  PSU_STEP_UNDERFLOW,
  PSU_GUARD_BAND,
  PSU_NO_MINIMAL_BOUNDARY,
  PSU_CONFIG_ERROR,
  PSU_IO_ERROR,
  PSU_BUFFER_TOO_SMALL,
  PSU_INTERNAL_ERROR
} psu_status;

PSU_API const char* psu_status_string(psu_status status);
PSU_API const char* psu_last_error(void);
/* Auxiliary number attached to the last error (Buchdahl ratio, failing residual). */
PSU_API double psu_last_error_detail(void);
PSU_API const char* psu_version(void);
/* 0 selects the hardware concurrency. Results do not depend on this. */
PSU_API psu_status psu_set_threads(unsigned threads);

/* ------------------------------------------------------------ profiles */

typedef struct psu_profile psu_profile;

PSU_API psu_status psu_profile_schwarzschild(double m, double r_lo, double r_hi, psu_profile** out);
/* Any real m, including m <= 0. */
PSU_API psu_status psu_profile_schwarzschild_family(double m, double r_lo, double r_hi, psu_profile** out);
PSU_API psu_status psu_profile_neck(double mu, psu_profile** out);
PSU_API psu_status psu_profile_interior_fluid(double m, double r_body, psu_profile** out);
PSU_API psu_status psu_profile_star(double m, double r_body, double r_hi, psu_profile** out);
PSU_API psu_status psu_profile_tabulated(const double* r, const double* N, const double* A, const double* R,
                                         size_t count, psu_profile** out);
/* Metric description in the config format, e.g. {"kind":"neck","mu":1}. */
PSU_API psu_status psu_profile_from_json(const char* json, psu_profile** out);
PSU_API void psu_profile_free(psu_profile* profile);
PSU_API psu_status psu_profile_domain(const psu_profile* profile, double* r_lo, double* r_hi);

/* ----------------------------------------------------------- curvature */

typedef struct psu_curvature {
  double r;
  double ric_nn, ric_tt, scalar;
  double hess_nn, hess_tt, lap_N;
  double residual_nn, residual_tt, residual_scalar, residual_lap;
  double interp_error_bound;
} psu_curvature;

typedef struct psu_surface {
  double r;
  double area, area_radius, H, tracefree_h_norm, nu_N, sigma_scalar, N;
  int minimal_surface;
} psu_surface;

PSU_API psu_status psu_curvature_at(const psu_profile* profile, double r, psu_curvature* out);
/* Finite-difference oracle with step h (Richardson-extrapolated if richardson != 0). */
PSU_API psu_status psu_fd_curvature(const psu_profile* profile, double r, double h, int richardson,
                                    psu_curvature* out);
PSU_API psu_status psu_surface_geometry(const psu_profile* profile, double r, psu_surface* out);

/* ------------------------------------------------------ photon spheres */

/* Writes up to `capacity` radii and the total count to *count. Returns
 * PSU_BUFFER_TOO_SMALL (with *count set) when capacity is insufficient. */
PSU_API psu_status psu_photon_sphere_search(const psu_profile* profile, double* radii, size_t capacity,
                                            size_t* count);
PSU_API psu_status psu_fermat_residual(const psu_profile* profile, double r, double* out);
PSU_API psu_status psu_impact_parameter(const psu_profile* profile, double r, double* out);

typedef struct psu_identity_report {
  double r0, area_radius, N, H, nu_N, sigma_scalar;
  double res_umbilic, res_NH, res_rH, res_sigmaR, res_chain;
  double mass_i, spacetime_H, mass_from_H, tol, worst_value;
  int H_positive;
  int photon_sphere;
} psu_identity_report;

PSU_API psu_status psu_audit_sphere(const psu_profile* profile, double r0, double tol, psu_identity_report* out);

typedef enum psu_trap_verdict { PSU_TRAPPED = 0, PSU_ESCAPED = 1, PSU_FELL_IN = 2 } psu_trap_verdict;

typedef struct psu_trapping_report {
  double r0, max_radial_deviation, window, trap_tol;
  psu_trap_verdict verdict;
} psu_trapping_report;

/* window and trap_tol in units of the mass; pass 0 for the defaults (50, 1e-3). */
PSU_API psu_status psu_trapping_test(const psu_profile* profile, double r0, double window, double trap_tol,
                                     psu_trapping_report* out);

/* ------------------------------------------------------------ commands */

typedef struct psu_result psu_result;

/* Runs a CLI subcommand (verify, photon-search, audit, glue, pipeline, star).
 * config_json and overrides_json may be NULL. Command failures are reported
 * through psu_result_exit_code; the status only covers API misuse. */
PSU_API psu_status psu_run_command(const char* command, const char* config_json, const char* overrides_json,
                                   psu_result** out);
PSU_API int psu_result_exit_code(const psu_result* result);
PSU_API const char* psu_result_json(const psu_result* result);
PSU_API const char* psu_result_csv(const psu_result* result);
PSU_API const char* psu_result_summary(const psu_result* result);
PSU_API size_t psu_result_artifact_count(const psu_result* result);
PSU_API const char* psu_result_artifact_name(const psu_result* result, size_t index);
PSU_API const char* psu_result_artifact_content(const psu_result* result, size_t index);
PSU_API void psu_result_free(psu_result* result);

#ifdef __cplusplus
}
#endif

#endif
