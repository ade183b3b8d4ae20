#pragma once

#include <string>
#include <vector>

#include "curvature.hpp"
#include "profile.hpp"

namespace psu {

struct IdentityReport {
  double r0 = 0.0;
  double area_radius = 0.0;
  double N = 0.0;
  double H = 0.0;
  double nu_N = 0.0;
  double sigma_scalar = 0.0;

  double res_umbilic = 0.0;  // |traceless second fundamental form|
  double res_NH = 0.0;       // N H - 2 nu(N)
  double res_rH = 0.0;       // (r_area H)^2 - 4/3
  double res_sigmaR = 0.0;   // sigma_R - (3/2) H^2
  double res_chain = 0.0;    // N - sqrt(3) m_i / r_area

  double mass_i = 0.0;       // r_area^2 nu(N)
  bool H_positive = false;
  double spacetime_H = 0.0;  // (3/2) H
  double mass_from_H = 0.0;  // 1 / (sqrt(3) spacetime_H)

  double tol = 1e-10;
  bool photon_sphere = false;   // all four identity residuals within tol
  std::string worst_residual;   // name of the largest |residual|
  double worst_value = 0.0;     // its signed value
};

IdentityReport audit_sphere(const RadialProfile& profile, double r0, double tol = 1e-10);
// Parallel over radii; results in input order.
std::vector<IdentityReport> audit_spheres(const RadialProfile& profile, const std::vector<double>& radii,
                                          double tol = 1e-10);

struct ComponentMass {
  double analytic = 0.0;    // r_area^2 nu(N)
  double quadrature = 0.0;  // (1/4pi) surface integral of nu(N), midpoint rule in cos(theta)
  int panels = 0;
};

ComponentMass component_mass(const RadialProfile& profile, double r0, int panels = 4096);

struct MonotonicitySample {
  double t = 0.0;  // g-arclength from r_start
  double r = 0.0;
  double H_over_N = 0.0;
};

struct MonotonicityReport {
  std::vector<MonotonicitySample> samples;
  double max_violation = 0.0;  // largest increase of H/N between consecutive samples
  int violations = 0;
};

MonotonicityReport monotonicity_scan(const RadialProfile& profile, double r_start, double r_end, int n);

// H(r0) > 0.
bool positivity_check(const RadialProfile& profile, double r0);

}  // namespace psu
