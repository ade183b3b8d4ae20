#include "curvature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "error.hpp"
#include "profile_model.hpp"

namespace psu {

double CurvatureSample::max_vacuum_residual() const {
  return std::max({std::abs(vac_residual_nn), std::abs(vac_residual_tt), std::abs(scalar_residual),
                   std::abs(lap_residual)});
}

double CurvatureSample::max_curvature() const {
  return std::max({std::abs(ric_nn), std::abs(ric_tt), std::abs(scalar)});
}

namespace {

// Propagates the interpolant's derivative-slot error bounds through the
// residual formulas by linear sensitivity (one-sided perturbation per slot).
double residual_error_bound(const MetricJet<double>& jet, const MetricJet<double>& err, double r) {
  auto residuals = [&](const MetricJet<double>& j) {
    const CurvatureSample c = curvature_from_frame(detail::frame_from_jet(j), r);
    return std::array<double, 4>{c.vac_residual_nn, c.vac_residual_tt, c.scalar_residual, c.lap_residual};
  };
  const auto ref = residuals(jet);
  std::array<double, 4> total{};
  auto perturb = [&](Jet2<double> MetricJet<double>::*field, double Jet2<double>::*slot) {
    MetricJet<double> p = jet;
    const double delta = (err.*field).*slot;
    if (delta == 0.0) return;
    (p.*field).*slot += delta;
    const auto out = residuals(p);
    for (std::size_t k = 0; k < 4; ++k) total[k] += std::abs(out[k] - ref[k]);
  };
  for (auto field : {&MetricJet<double>::N, &MetricJet<double>::A, &MetricJet<double>::R}) {
    for (auto slot : {&Jet2<double>::v, &Jet2<double>::d, &Jet2<double>::dd}) perturb(field, slot);
  }
  return *std::max_element(total.begin(), total.end());
}

}  // namespace

CurvatureSample curvature_at(const RadialProfile& profile, double r) {
  const MetricJet<double> jet = profile.jet(r);
  const FrameJet<double> frame = profile.raw_frame(r);
  if (!(frame.R.v > 0.0) || !std::isfinite(frame.A)) {
    throw Error(ErrorCode::one_sided_limit, "curvature undefined where the area radius or A degenerates", r);
  }
  CurvatureSample c = curvature_from_frame(frame, r);
  if (auto err = profile.interpolation_error(r)) c.interp_error_bound = residual_error_bound(jet, *err, r);
  return c;
}

SurfaceGeometry surface_geometry(const RadialProfile& profile, double r) {
  if (!profile.domain().contains(r)) {
    throw Error(ErrorCode::domain_violation, "surface outside the profile domain", r);
  }
  const EndpointLimit limit = profile.limit_at(r);
  if (limit == EndpointLimit::regular_center) {
    throw Error(ErrorCode::one_sided_limit, "sphere collapses to the regular center", r);
  }
  const FrameJet<double> f = profile.raw_frame(r);
  SurfaceGeometry s;
  s.r = r;
  s.area_radius = f.R.v;
  s.area = 4.0 * std::numbers::pi * f.R.v * f.R.v;
  s.sigma_scalar = 2.0 / (f.R.v * f.R.v);
  s.N_val = f.N.v;
  s.nu_N = f.N.d;
  s.tracefree_h_norm = 0.0;
  if (limit == EndpointLimit::horizon) {
    s.H = 0.0;
    s.minimal_surface = true;
  } else {
    s.H = 2.0 * f.R.d / f.R.v;
  }
  return s;
}

TestFunction TestFunction::lapse() {
  return {"N", [](double, const MetricJet<double>& j) { return j.N; }};
}

TestFunction TestFunction::radius() {
  return {"r", [](double r, const MetricJet<double>&) { return Jet2<double>{r, 1.0, 0.0}; }};
}

TestFunction TestFunction::radius_squared() {
  return {"r^2", [](double r, const MetricJet<double>&) { return Jet2<double>{r * r, 2.0 * r, 2.0}; }};
}

IdentityResiduals identity_residuals(const RadialProfile& profile, double r, const TestFunction& f) {
  const MetricJet<double> j = profile.jet(r);
  const CurvatureSample c = curvature_at(profile, r);
  const SurfaceGeometry s = surface_geometry(profile, r);
  const Jet2<double> fj = f.eval(r, j);

  // |h|^2 = |h_traceless|^2 + H^2/2 for a 2-surface.
  const double h_norm2 = s.tracefree_h_norm * s.tracefree_h_norm + 0.5 * s.H * s.H;
  IdentityResiduals out;
  out.gauss = c.scalar - 2.0 * c.ric_nn - (s.sigma_scalar - s.H * s.H + h_norm2);

  // Lap f = (1 / (A R^2)) d/dr (R^2 f' / A); f is constant on the sphere so the
  // intrinsic Laplacian vanishes.
  const double A = j.A.v, R = j.R.v;
  const double flux_derivative =
      2.0 * R * j.R.d * fj.d / A + R * R * fj.dd / A - R * R * fj.d * j.A.d / (A * A);
  const double lap_f = flux_derivative / (A * R * R);
  const double lap_sigma_f = 0.0;
  const double hess_nn_f = (fj.dd * A - fj.d * j.A.d) / (A * A * A);
  const double nu_f = fj.d / A;
  out.surflap = lap_f - (lap_sigma_f + hess_nn_f + s.H * nu_f);
  return out;
}

}  // namespace psu
