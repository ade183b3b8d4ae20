#include "psu/psu.h"

#include <exception>
#include <new>
#include <string>
#include <vector>

#include "audit.hpp"
#include "commands.hpp"
#include "config.hpp"
#include "curvature.hpp"
#include "error.hpp"
#include "fd_oracle.hpp"
#include "geodesics.hpp"
#include "parallel.hpp"
#include "profile.hpp"

struct psu_profile {
  psu::RadialProfile profile;
};

struct psu_result {
  psu::scenario::CommandResult result;
};

namespace {

thread_local std::string last_error;
thread_local double last_detail = 0.0;

psu_status status_for(psu::ErrorCode code) {
  using psu::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return PSU_INVALID_ARGUMENT;
    case ErrorCode::domain_violation: return PSU_DOMAIN_VIOLATION;
    case ErrorCode::one_sided_limit: return PSU_ONE_SIDED_LIMIT;
    case ErrorCode::buchdahl_violation: return PSU_BUCHDAHL_VIOLATION;
    case ErrorCode::audit_refused: return PSU_AUDIT_REFUSED;
    case ErrorCode::not_rigid: return PSU_NOT_RIGID;
    case ErrorCode::non_null_initial_data: return PSU_NON_NULL_INITIAL_DATA;
    case ErrorCode::step_underflow: return PSU_STEP_UNDERFLOW;
    case ErrorCode::guard_band: return PSU_GUARD_BAND;
    case ErrorCode::no_minimal_boundary: return PSU_NO_MINIMAL_BOUNDARY;
    case ErrorCode::config: return PSU_CONFIG_ERROR;
    case ErrorCode::io: return PSU_IO_ERROR;
  }
  return PSU_INTERNAL_ERROR;
}

psu_status fail(psu_status s, const std::string& msg, double detail = 0.0) {
  last_error = msg;
  last_detail = detail;
  return s;
}

template <class F>
psu_status guarded(F&& f) {
  try {
    last_error.clear();
    last_detail = 0.0;
    f();
    return PSU_OK;
  } catch (const psu::Error& e) {
    return fail(status_for(e.code()), e.what(), e.detail());
  } catch (const std::bad_alloc&) {
    return fail(PSU_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return fail(PSU_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(PSU_INTERNAL_ERROR, "unknown exception");
  }
}

void require(const void* p, const char* name) {
  if (!p) throw psu::Error(psu::ErrorCode::invalid_argument, std::string(name) + " must not be null");
}

psu_status make(psu_profile** out, const auto& build) {
  return guarded([&] {
    require(out, "out");
    *out = nullptr;
    *out = new psu_profile{build()};
  });
}

void copy(const psu::CurvatureSample& c, psu_curvature* out) {
  *out = psu_curvature{c.r,           c.ric_nn,          c.ric_tt,          c.scalar,          c.hess_nn,
                       c.hess_tt,     c.lap_N,           c.vac_residual_nn, c.vac_residual_tt, c.scalar_residual,
                       c.lap_residual, c.interp_error_bound};
}

}  // namespace

extern "C" {

const char* psu_status_string(psu_status status) {
  switch (status) {
    case PSU_OK: return "ok";
    case PSU_INVALID_ARGUMENT: return "invalid_argument";
    case PSU_DOMAIN_VIOLATION: return "domain_violation";
    case PSU_ONE_SIDED_LIMIT: return "one_sided_limit";
    case PSU_BUCHDAHL_VIOLATION: return "buchdahl_violation";
    case PSU_AUDIT_REFUSED: return "audit_refused";
    case PSU_NOT_RIGID: return "not_rigid";
    case PSU_NON_NULL_INITIAL_DATA: return "non_null_initial_data";
    case PSU_STEP_UNDERFLOW: return "step_underflow";
    case PSU_GUARD_BAND: return "guard_band";
    case PSU_NO_MINIMAL_BOUNDARY: return "no_minimal_boundary";
    case PSU_CONFIG_ERROR: return "config";
    case PSU_IO_ERROR: return "io";
    case PSU_BUFFER_TOO_SMALL: return "buffer_too_small";
    case PSU_INTERNAL_ERROR: return "internal_error";
  }
  return "unknown";
}

const char* psu_last_error(void) { return last_error.c_str(); }
double psu_last_error_detail(void) { return last_detail; }
const char* psu_version(void) { return "1.0.0"; }

psu_status psu_set_threads(unsigned threads) {
  return guarded([&] { psu::set_thread_count(threads); });
}

psu_status psu_profile_schwarzschild(double m, double r_lo, double r_hi, psu_profile** out) {
  return make(out, [&] { return psu::make_schwarzschild_exterior(m, r_lo, r_hi); });
}

psu_status psu_profile_schwarzschild_family(double m, double r_lo, double r_hi, psu_profile** out) {
  return make(out, [&] { return psu::make_schwarzschild_family(m, r_lo, r_hi); });
}

psu_status psu_profile_neck(double mu, psu_profile** out) {
  return make(out, [&] { return psu::make_schwarzschild_neck(mu); });
}

psu_status psu_profile_interior_fluid(double m, double r_body, psu_profile** out) {
  return make(out, [&] { return psu::make_interior_fluid(m, r_body); });
}

psu_status psu_profile_star(double m, double r_body, double r_hi, psu_profile** out) {
  return make(out, [&] { return psu::make_star(m, r_body, r_hi); });
}

psu_status psu_profile_tabulated(const double* r, const double* N, const double* A, const double* R, size_t count,
                                 psu_profile** out) {
  return make(out, [&] {
    require(r, "r");
    require(N, "N");
    require(A, "A");
    require(R, "R");
    return psu::make_tabulated({r, count}, {N, count}, {A, count}, {R, count});
  });
}

psu_status psu_profile_from_json(const char* json, psu_profile** out) {
  return make(out, [&] {
    require(json, "json");
    psu::scenario::Json metric;
    try {
      metric = psu::scenario::Json::parse(json);
    } catch (const std::exception& e) {
      throw psu::Error(psu::ErrorCode::config, std::string("metric description is not valid JSON: ") + e.what());
    }
    if (metric.is_string()) metric = psu::scenario::Json{{"kind", metric}};
    psu::scenario::Json resolved;
    return psu::scenario::profile_from_json(metric, {}, resolved);
  });
}

void psu_profile_free(psu_profile* profile) { delete profile; }

psu_status psu_profile_domain(const psu_profile* profile, double* r_lo, double* r_hi) {
  return guarded([&] {
    require(profile, "profile");
    const psu::Interval d = profile->profile.domain();
    if (r_lo) *r_lo = d.lo;
    if (r_hi) *r_hi = d.hi;
  });
}

psu_status psu_curvature_at(const psu_profile* profile, double r, psu_curvature* out) {
  return guarded([&] {
    require(profile, "profile");
    require(out, "out");
    copy(psu::curvature_at(profile->profile, r), out);
  });
}

psu_status psu_fd_curvature(const psu_profile* profile, double r, double h, int richardson, psu_curvature* out) {
  return guarded([&] {
    require(profile, "profile");
    require(out, "out");
    copy(richardson ? psu::fd_curvature_richardson(profile->profile, r, h)
                    : psu::fd_curvature_oracle(profile->profile, r, h),
         out);
  });
}

psu_status psu_surface_geometry(const psu_profile* profile, double r, psu_surface* out) {
  return guarded([&] {
    require(profile, "profile");
    require(out, "out");
    const psu::SurfaceGeometry s = psu::surface_geometry(profile->profile, r);
    *out = psu_surface{s.r,    s.area,         s.area_radius, s.H, s.tracefree_h_norm,
                       s.nu_N, s.sigma_scalar, s.N_val,       s.minimal_surface ? 1 : 0};
  });
}

psu_status psu_photon_sphere_search(const psu_profile* profile, double* radii, size_t capacity, size_t* count) {
  bool short_buffer = false;
  const psu_status s = guarded([&] {
    require(profile, "profile");
    require(count, "count");
    if (capacity > 0) require(radii, "radii");
    const std::vector<double> roots = psu::photon_sphere_search(profile->profile);
    *count = roots.size();
    for (size_t i = 0; i < roots.size() && i < capacity; ++i) radii[i] = roots[i];
    short_buffer = roots.size() > capacity;
  });
  if (s == PSU_OK && short_buffer) return fail(PSU_BUFFER_TOO_SMALL, "radii buffer too small");
  return s;
}

psu_status psu_fermat_residual(const psu_profile* profile, double r, double* out) {
  return guarded([&] {
    require(profile, "profile");
    require(out, "out");
    *out = psu::fermat_geodesy_residual(profile->profile, r);
  });
}

psu_status psu_impact_parameter(const psu_profile* profile, double r, double* out) {
  return guarded([&] {
    require(profile, "profile");
    require(out, "out");
    *out = psu::impact_parameter(profile->profile, r);
  });
}

psu_status psu_audit_sphere(const psu_profile* profile, double r0, double tol, psu_identity_report* out) {
  return guarded([&] {
    require(profile, "profile");
    require(out, "out");
    const psu::IdentityReport a = psu::audit_sphere(profile->profile, r0, tol > 0.0 ? tol : 1e-10);
    *out = psu_identity_report{a.r0,         a.area_radius, a.N,          a.H,           a.nu_N,     a.sigma_scalar,
                               a.res_umbilic, a.res_NH,     a.res_rH,     a.res_sigmaR,  a.res_chain, a.mass_i,
                               a.spacetime_H, a.mass_from_H, a.tol,       a.worst_value, a.H_positive ? 1 : 0,
                               a.photon_sphere ? 1 : 0};
  });
}

psu_status psu_trapping_test(const psu_profile* profile, double r0, double window, double trap_tol,
                             psu_trapping_report* out) {
  return guarded([&] {
    require(profile, "profile");
    require(out, "out");
    psu::TrappingOptions opts;
    if (window > 0.0) opts.window = window;
    if (trap_tol > 0.0) opts.trap_tol = trap_tol;
    const psu::TrappingReport t = psu::trapping_test(profile->profile, r0, opts);
    psu_trap_verdict v = PSU_TRAPPED;
    if (t.verdict == psu::TrapVerdict::escaped) v = PSU_ESCAPED;
    if (t.verdict == psu::TrapVerdict::fell_in) v = PSU_FELL_IN;
    *out = psu_trapping_report{t.r0, t.max_radial_deviation, t.window, t.trap_tol, v};
  });
}

psu_status psu_run_command(const char* command, const char* config_json, const char* overrides_json,
                           psu_result** out) {
  return guarded([&] {
    require(command, "command");
    require(out, "out");
    *out = nullptr;
    *out = new psu_result{psu::scenario::run_command(command, config_json ? config_json : "",
                                                     overrides_json ? overrides_json : "")};
  });
}

int psu_result_exit_code(const psu_result* result) { return result ? result->result.exit_code : 70; }
const char* psu_result_json(const psu_result* result) { return result ? result->result.json.c_str() : ""; }
const char* psu_result_csv(const psu_result* result) { return result ? result->result.csv.c_str() : ""; }
const char* psu_result_summary(const psu_result* result) { return result ? result->result.summary.c_str() : ""; }

size_t psu_result_artifact_count(const psu_result* result) {
  return result ? result->result.artifacts.size() : 0;
}

const char* psu_result_artifact_name(const psu_result* result, size_t index) {
  if (!result || index >= result->result.artifacts.size()) return nullptr;
  return result->result.artifacts[index].first.c_str();
}

const char* psu_result_artifact_content(const psu_result* result, size_t index) {
  if (!result || index >= result->result.artifacts.size()) return nullptr;
  return result->result.artifacts[index].second.c_str();
}

void psu_result_free(psu_result* result) { delete result; }

}  // extern "C"
