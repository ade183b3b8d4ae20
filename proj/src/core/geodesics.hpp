#pragma once

#include <optional>
#include <string>
#include <vector>

#include "profile.hpp"

namespace psu {

// Fermat metric N^-2 g. Requires N > 0 on the whole domain.
RadialProfile fermat_profile(const RadialProfile& profile);

// Mean curvature of the r0-sphere in the Fermat metric. Zero exactly on a
// photon sphere; positive outside it in Schwarzschild.
double fermat_geodesy_residual(const RadialProfile& profile, double r0);

struct PhotonSearchOptions {
  int scan_points = 1024;
  // Restrict the scan to a sub-interval of the domain.
  std::optional<Interval> window;
};

// Sign-change-bracketed roots of the Fermat residual, refined in binary128.
std::vector<double> photon_sphere_search(const RadialProfile& profile, const PhotonSearchOptions& opts = {});

// b = R/N at r0.
double impact_parameter(const RadialProfile& profile, double r0);

struct NullGeodesicState {
  double lambda = 0.0;
  double r = 0.0;
  double phi = 0.0;
  double p_r = 0.0;  // A^2 dr/dlambda
  double E = 0.0;    // N^2 dt/dlambda
  double L = 0.0;    // R^2 dphi/dlambda
};

// Initial data tangent to the r0-sphere: p_r = 0, L = E R/N.
NullGeodesicState tangent_launch(const RadialProfile& profile, double r0, double E = 1.0);

struct TrajectoryPoint {
  double lambda = 0.0;
  double r = 0.0;
  double phi = 0.0;
  double p_r = 0.0;
  double constraint = 0.0;  // (-N^2 tdot^2 + A^2 rdot^2 + R^2 phidot^2) / E^2
};

enum class Termination { lambda_max, domain_exit, horizon_approach };
const char* to_string(Termination t);

struct Trajectory {
  std::vector<TrajectoryPoint> points;
  Termination reason = Termination::lambda_max;
  double max_constraint = 0.0;
  double max_constraint_step = 0.0;  // largest change of the constraint over one step
  double E_drift = 0.0;              // relative
  double L_drift = 0.0;              // relative
  int rejected_steps = 0;
};

struct IntegrationOptions {
  double lambda_max = 50.0;
  double tol = 1e-12;
  double max_step = 0.0;   // 0: lambda_max / 1000
  double min_step = 1e-14; // relative to lambda_max; smaller steps raise step_underflow
};

// Equatorial null geodesic by adaptive Runge-Kutta-Fehlberg 7(8) in binary128.
Trajectory integrate_null_geodesic(const RadialProfile& profile, const NullGeodesicState& init,
                                   const IntegrationOptions& opts = {});

enum class TrapVerdict { trapped, escaped, fell_in };
const char* to_string(TrapVerdict v);

struct TrappingReport {
  double r0 = 0.0;
  double max_radial_deviation = 0.0;
  double window = 0.0;
  double trap_tol = 0.0;
  TrapVerdict verdict = TrapVerdict::trapped;
};

struct TrappingOptions {
  // Both in units of the length scale (m, or r0/3 when m <= 0).
  double window = 50.0;
  double trap_tol = 1e-3;
  double tol = 1e-12;
};

TrappingReport trapping_test(const RadialProfile& profile, double r0, const TrappingOptions& opts = {});

// CSV with header lambda,r,phi,p_r,constraint.
std::string trajectory_csv(const Trajectory& t);

}  // namespace psu
