#pragma once

#include <functional>
#include <string>

#include "profile.hpp"

namespace psu {

// Pointwise curvature of (M, g, N) on the sphere of coordinate radius r,
// in the orthonormal frame (nu, unit tangent).
struct CurvatureSample {
  double r = 0.0;
  double ric_nn = 0.0;
  double ric_tt = 0.0;
  double scalar = 0.0;
  double hess_nn = 0.0;
  double hess_tt = 0.0;
  double lap_N = 0.0;
  // Static vacuum residuals: N Ric - Hess N (two frame components), R, Lap N.
  double vac_residual_nn = 0.0;
  double vac_residual_tt = 0.0;
  double scalar_residual = 0.0;
  double lap_residual = 0.0;
  // Bound on residual error due to interpolation (tabulated data only).
  double interp_error_bound = 0.0;

  double max_vacuum_residual() const;
  double max_curvature() const;
};

struct SurfaceGeometry {
  double r = 0.0;
  double area = 0.0;
  double area_radius = 0.0;
  double H = 0.0;
  double tracefree_h_norm = 0.0;
  double nu_N = 0.0;
  double sigma_scalar = 0.0;
  double N_val = 0.0;
  bool minimal_surface = false;
};

template <class T>
CurvatureSample curvature_from_frame(const FrameJet<T>& f, double r) {
  const T R = f.R.v, Rs = f.R.d, Rss = f.R.dd;
  const T N = f.N.v, Ns = f.N.d, Nss = f.N.dd;
  CurvatureSample c;
  c.r = r;
  c.ric_nn = static_cast<double>(T(-2) * Rss / R);
  c.ric_tt = static_cast<double>(-Rss / R + (T(1) - Rs * Rs) / (R * R));
  c.scalar = static_cast<double>(T(-4) * Rss / R + T(2) * (T(1) - Rs * Rs) / (R * R));
  c.hess_nn = static_cast<double>(Nss);
  c.hess_tt = static_cast<double>(Rs * Ns / R);
  c.lap_N = static_cast<double>(Nss + T(2) * Rs * Ns / R);
  c.vac_residual_nn = static_cast<double>(N * (T(-2) * Rss / R) - Nss);
  c.vac_residual_tt = static_cast<double>(N * (-Rss / R + (T(1) - Rs * Rs) / (R * R)) - Rs * Ns / R);
  c.scalar_residual = c.scalar;
  c.lap_residual = c.lap_N;
  return c;
}

// Closed-form curvature from the analytic derivatives of N, A, R. Tabulated
// profiles get an interpolation-error annotation.
CurvatureSample curvature_at(const RadialProfile& profile, double r);

SurfaceGeometry surface_geometry(const RadialProfile& profile, double r);

// A radial test function f(r) with its first two r-derivatives.
struct TestFunction {
  std::string name;
  std::function<Jet2<double>(double r, const MetricJet<double>& jet)> eval;

  static TestFunction lapse();
  static TestFunction radius();
  static TestFunction radius_squared();
};

struct IdentityResiduals {
  double gauss = 0.0;
  double surflap = 0.0;
};

// Contracted Gauss equation and the surface-Laplacian splitting, measured on
// the r-sphere: left sides from curvature_at and the divergence-form
// Laplacian, right sides from surface_geometry.
IdentityResiduals identity_residuals(const RadialProfile& profile, double r, const TestFunction& f);

}  // namespace psu
