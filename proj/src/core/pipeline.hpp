#pragma once

#include <optional>
#include <string>
#include <vector>

#include "manifold.hpp"

namespace psu {

// Chart samples kept at least guard * r away from both chart ends (gluing
// surfaces and the truncation radius), where the composite is only C^{1,1}.
std::vector<ManifoldPoint> guarded_samples(const ConformalManifold& conformal, int n, double guard = 1e-3);

struct SampleValue {
  ManifoldPoint at;
  double u = 0.0;
  double value = 0.0;
};

struct ScalarResidualReport {
  double max_abs = 0.0;
  ManifoldPoint argmax;
  std::vector<SampleValue> samples;
};

// Scalar curvature of u^4 g by the finite-difference oracle (Richardson step).
ScalarResidualReport conformal_scalar_residual(const ConformalManifold& conformal,
                                               const std::vector<ManifoldPoint>& samples, double guard = 1e-3);

struct AdmEstimate {
  double mass = 0.0;
  double error_bar = 0.0;
  std::vector<double> radii;
  std::vector<double> integrand;  // coordinate-sphere mass m(r)
};

// Coordinate-sphere ADM integrand in the chart's radial coordinate,
// Richardson (Neville) extrapolated in 1/r. Closed-form charts are extended
// past their truncation radius when the schedule needs it.
AdmEstimate adm_mass_estimate(const RadialProfile& chart, const std::vector<double>& radii);
AdmEstimate adm_mass_estimate(const PiecewiseManifold& manifold, const std::string& end_id,
                              const std::vector<double>& radii);
// Only the + end of u^4 g is an asymptotic end; the reflected end is
// compactified (see compactification_check) and is rejected here.
AdmEstimate adm_mass_estimate(const ConformalManifold& conformal, const std::string& end_id,
                              const std::vector<double>& radii);

struct CompactificationReport {
  std::string end_id;
  std::vector<double> R;    // inverted radius 1/r
  std::vector<double> f_T;  // tangential factor u^4 R_area^2 r^2
  std::vector<double> f_R;  // radial factor u^4 A^2 r^4
  std::vector<double> error;  // max |f - (m_i/2)^4|
  std::vector<double> rates;  // measured order between consecutive R
  double limit = 0.0;         // extrapolated limit factor
  double m_hat = 0.0;         // 2 limit^(1/4)
  double reference = 0.0;     // (m_i/2)^4
  bool ok = false;
  std::string flag;           // reason when not ok
};

CompactificationReport compactification_check(const ConformalManifold& conformal, const std::vector<double>& R_schedule);

struct FlatnessReport {
  double max_curvature = 0.0;
  ManifoldPoint argmax;
  std::vector<SampleValue> samples;
};

// Closed-form curvature of u^4 g at guarded samples.
FlatnessReport flatness_check(const ConformalManifold& conformal, const std::vector<ManifoldPoint>& samples,
                              double guard = 1e-3);

enum class Verdict { schwarzschild_rigid, not_rigid };
const char* to_string(Verdict v);

struct Reconstruction {
  double mass = 0.0;
  double r_photon = 0.0;
  double spacetime_H = 0.0;
  double audit_discrepancy = 0.0;
};

struct PipelineOptions {
  std::optional<double> r0;  // default: inner end of the exterior domain
  int samples = 512;
  int psi_samples = 10000;
  double guard = 1e-3;
  double match_tol = 1e-8;
  double flat_tol = 1e-6;
  double mass_tol = 1e-3;
  double scalar_tol = 1e-8;
  std::vector<double> adm_schedule{50.0, 100.0, 200.0, 400.0};  // in units of m_i
  std::vector<double> R_schedule{1e-2, 1e-3, 1e-4};             // in units of 1/m_i
  // Skip the audit and psi-bound gates (perturbation experiments only).
  bool relaxed_gates = false;
  ConformalOptions corruption;
};

struct PipelineReport {
  double r0 = 0.0;
  IdentityReport audit;
  double mass_i = 0.0;
  double mu = 0.0;
  std::vector<MatchReport> matches;
  PsiBoundReport psi_bound;
  double harmonicity = 0.0;
  ScalarResidualReport scalar;
  AdmEstimate adm_exterior;
  AdmEstimate adm_conformal;
  CompactificationReport compactification;
  FlatnessReport flatness;
  double max_match_jump = 0.0;
  Verdict verdict = Verdict::not_rigid;
  std::optional<Reconstruction> reconstruction;
  std::vector<std::string> notes;  // stages that could not run on this input
  PipelineOptions options;

  bool scalar_ok() const { return scalar.max_abs <= options.scalar_tol; }
  bool masses_ok() const;
};

PipelineReport run_pipeline(const RadialProfile& exterior, const PipelineOptions& opts = {});

// (mu_1, 3 mu_1, 1/(sqrt(3) mu_1)); throws not_rigid unless the verdict is rigid.
Reconstruction reconstruct_schwarzschild(const PipelineReport& report);

}  // namespace psu
