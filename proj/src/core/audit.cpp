#include "audit.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "error.hpp"
#include "parallel.hpp"

namespace psu {

namespace {

void require_audit_radius(const RadialProfile& profile, double r0) {
  if (!profile.domain().contains(r0)) {
    throw Error(ErrorCode::domain_violation, "audited radius outside the profile domain", r0);
  }
  if (profile.limit_at(r0) != EndpointLimit::none) {
    throw Error(ErrorCode::one_sided_limit, "audited radius is a degenerate endpoint", r0);
  }
  if (!(profile.lapse(r0) > 0.0)) throw Error(ErrorCode::domain_violation, "audit needs N > 0", r0);
}

}  // namespace

IdentityReport audit_sphere(const RadialProfile& profile, double r0, double tol) {
  require_audit_radius(profile, r0);
  const SurfaceGeometry s = surface_geometry(profile, r0);

  IdentityReport rep;
  rep.r0 = r0;
  rep.tol = tol;
  rep.area_radius = s.area_radius;
  rep.N = s.N_val;
  rep.H = s.H;
  rep.nu_N = s.nu_N;
  rep.sigma_scalar = s.sigma_scalar;

  rep.res_umbilic = s.tracefree_h_norm;
  rep.res_NH = s.N_val * s.H - 2.0 * s.nu_N;
  const double rH = s.area_radius * s.H;
  rep.res_rH = rH * rH - 4.0 / 3.0;
  rep.res_sigmaR = s.sigma_scalar - 1.5 * s.H * s.H;

  rep.mass_i = s.area_radius * s.area_radius * s.nu_N;
  rep.res_chain = s.N_val - std::sqrt(3.0) * rep.mass_i / s.area_radius;
  rep.H_positive = s.H > 0.0;
  rep.spacetime_H = 1.5 * s.H;
  rep.mass_from_H = 1.0 / (std::sqrt(3.0) * rep.spacetime_H);

  const std::pair<const char*, double> named[] = {
      {"res_umbilic", rep.res_umbilic},
      {"res_NH", rep.res_NH},
      {"res_rH", rep.res_rH},
      {"res_sigmaR", rep.res_sigmaR},
  };
  const auto* worst = std::max_element(std::begin(named), std::end(named), [](const auto& a, const auto& b) {
    return std::abs(a.second) < std::abs(b.second);
  });
  rep.worst_residual = worst->first;
  rep.worst_value = worst->second;
  rep.photon_sphere = std::abs(rep.worst_value) <= tol && rep.H_positive;
  return rep;
}

std::vector<IdentityReport> audit_spheres(const RadialProfile& profile, const std::vector<double>& radii,
                                          double tol) {
  return parallel_indexed(radii.size(), [&](std::size_t i) { return audit_sphere(profile, radii[i], tol); });
}

ComponentMass component_mass(const RadialProfile& profile, double r0, int panels) {
  require_audit_radius(profile, r0);
  if (panels < 1) throw Error(ErrorCode::invalid_argument, "panel count must be positive", panels);
  const SurfaceGeometry s = surface_geometry(profile, r0);

  ComponentMass out;
  out.panels = panels;
  out.analytic = s.area_radius * s.area_radius * s.nu_N;

  // dA = R^2 dz dphi with z = cos(theta); the phi integral contributes 2pi.
  const double dz = 2.0 / panels;
  double sum = 0.0;
  for (int k = 0; k < panels; ++k) sum += s.nu_N * s.area_radius * s.area_radius * dz;
  out.quadrature = sum * 2.0 * std::numbers::pi / (4.0 * std::numbers::pi);
  return out;
}

MonotonicityReport monotonicity_scan(const RadialProfile& profile, double r_start, double r_end, int n) {
  if (n < 2 || !(r_end > r_start)) {
    throw Error(ErrorCode::invalid_argument, "monotonicity scan needs n >= 2 and r_start < r_end", n);
  }
  const Interval dom = profile.domain();
  if (!dom.contains(r_start) || !dom.contains(r_end)) {
    throw Error(ErrorCode::domain_violation, "monotonicity scan leaves the profile domain", r_start);
  }

  std::vector<double> rs(n);
  for (int k = 0; k < n; ++k) rs[k] = k + 1 == n ? r_end : r_start + (r_end - r_start) * k / (n - 1);

  const std::vector<double> breaks = profile.breakpoints();
  auto A = [&](double r) { return profile.raw_jet(r).A.v; };
  auto arclength = [&](double a, double b) {
    double total = 0.0;
    double lo = a;
    for (double bp : breaks) {
      if (bp > a && bp < b) {
        total += boost::math::quadrature::gauss_kronrod<double, 15>::integrate(A, lo, bp, 15, 1e-12);
        lo = bp;
      }
    }
    return total + boost::math::quadrature::gauss_kronrod<double, 15>::integrate(A, lo, b, 15, 1e-12);
  };

  const auto pieces = parallel_indexed(static_cast<std::size_t>(n), [&](std::size_t k) {
    const SurfaceGeometry s = surface_geometry(profile, rs[k]);
    if (!(s.N_val > 0.0)) throw Error(ErrorCode::domain_violation, "monotonicity scan needs N > 0", rs[k]);
    const double dt = k == 0 ? 0.0 : arclength(rs[k - 1], rs[k]);
    return std::pair<double, double>{dt, s.H / s.N_val};
  });

  MonotonicityReport rep;
  double t = 0.0;
  for (int k = 0; k < n; ++k) {
    t += pieces[k].first;
    rep.samples.push_back({t, rs[k], pieces[k].second});
    if (k > 0) {
      const double rise = pieces[k].second - pieces[k - 1].second;
      if (rise > 0.0) {
        ++rep.violations;
        rep.max_violation = std::max(rep.max_violation, rise);
      }
    }
  }
  return rep;
}

bool positivity_check(const RadialProfile& profile, double r0) {
  try {
    return surface_geometry(profile, r0).H > 0.0;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace psu
