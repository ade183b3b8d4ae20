#pragma once

#include <optional>
#include <string>
#include <vector>

#include "audit.hpp"
#include "curvature.hpp"
#include "profile.hpp"

namespace psu {

enum class Orientation { outward, reflected };
enum class GluingKind { photon_sphere, minimal_boundary };
const char* to_string(Orientation o);
const char* to_string(GluingKind k);

// One radial chart of a composite manifold. The collar function on the chart
// is psi = psi_sign * psi_scale * (lapse slot of the profile).
struct Chart {
  std::string id;
  RadialProfile profile;
  Orientation orientation = Orientation::outward;
  int psi_sign = 1;
  double psi_scale = 1.0;
  bool neck = false;

  Interval interval() const { return profile.domain(); }
};

struct Gluing {
  std::string id;
  std::string left;
  std::string right;
  double r_left = 0.0;   // surface radius in the left chart
  double r_right = 0.0;  // and in the right chart
  GluingKind kind = GluingKind::photon_sphere;
};

struct PiecewiseManifold {
  std::vector<Chart> charts;
  std::vector<Gluing> gluings;
  std::vector<std::string> ends;
  // Data of the glued photon sphere.
  double mass_i = 0.0;
  double area_radius = 0.0;
  double mu = 0.0;

  const Chart& chart(const std::string& id) const;
  const Gluing& gluing(const std::string& id) const;
};

struct NeckParameters {
  double mu = 0.0;
  Interval interval;
};

NeckParameters neck_parameters(const SurfaceGeometry& surface);

struct GlueOptions {
  double audit_tol = 1e-8;
  // Force a neck mass instead of r_i / 3 (mismatch experiments).
  std::optional<double> mu_override;
};

// Glues a Schwarzschild neck onto the exterior at its photon sphere r0.
// Throws audit_refused naming the worst identity residual if r0 fails audit.
PiecewiseManifold glue_neck(const RadialProfile& exterior, double r0, const GlueOptions& opts = {});

// One-sided limits of the matched quantities at a gluing surface.
struct SideLimits {
  double psi = 0.0;
  double nu_psi = 0.0;       // normal derivative of psi, normal pointing to the + end
  double area_radius = 0.0;
  double H = 0.0;            // mean curvature w.r.t. the same normal
  double dgAB = 0.0;         // H R^2 / nu(psi)
  double g_psipsi = 0.0;     // 1 / nu(psi)^2
  double dg_psipsi = 0.0;    // -2 nu(psi)^2 Hess psi(nu, nu)
  double hess_psi = 0.0;
};

SideLimits side_limits(const Chart& chart, double r);

struct MatchReport {
  std::string surface_id;
  SideLimits left, right;
  double jump_psi = 0.0;
  double jump_nu_psi = 0.0;
  double jump_area_radius = 0.0;
  double jump_H = 0.0;
  double jump_dgAB = 0.0;
  double jump_g_psipsi = 0.0;
  double jump_dg_psipsi = 0.0;

  double max_jump() const;
};

MatchReport compare_sides(const SideLimits& left, const SideLimits& right, std::string surface_id = {});
MatchReport match_report(const PiecewiseManifold& manifold, const std::string& surface_id);

// Appends reflected copies through the minimal boundary.
PiecewiseManifold double_manifold(const PiecewiseManifold& manifold);

struct ManifoldPoint {
  std::string chart;
  double r = 0.0;
};

// Mirror image in the doubled manifold.
ManifoldPoint reflect(const PiecewiseManifold& manifold, const ManifoldPoint& p);
double psi_at(const PiecewiseManifold& manifold, const ManifoldPoint& p);

struct PsiBoundReport {
  bool ok = false;
  double max_abs_psi = 0.0;
  ManifoldPoint argmax;
  std::vector<double> boundary_lapse;  // N_i at each photon-sphere gluing
  int samples = 0;
};

PsiBoundReport psi_bound_check(const PiecewiseManifold& manifold, int n_samples);

// Largest |Lap psi| over chart samples kept `guard` (relative) away from chart ends.
double psi_harmonicity_residual(const PiecewiseManifold& manifold, int n_samples, double guard = 1e-3);

struct ConformalChart {
  std::string id;
  RadialProfile profile;  // u^4 g; its lapse slot holds u
  Orientation orientation = Orientation::outward;
};

struct ConformalManifold {
  PiecewiseManifold source;
  std::vector<ConformalChart> charts;
  double u_offset = 0.0;
  double u_quadratic = 0.0;

  const ConformalChart& chart(const std::string& id) const;
  double u_at(const ManifoldPoint& p) const;
};

struct ConformalOptions {
  double u_offset = 0.0;
  double u_quadratic = 0.0;
};

// u = (1 + psi)/2, metric factors A -> u^2 A, R -> u^2 R chartwise.
ConformalManifold conformal_transform(const PiecewiseManifold& manifold, const ConformalOptions& opts = {});

}  // namespace psu
