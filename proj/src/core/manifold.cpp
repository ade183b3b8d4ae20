#include "manifold.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"
#include "parallel.hpp"

namespace psu {

const char* to_string(Orientation o) { return o == Orientation::outward ? "outward" : "reflected"; }

const char* to_string(GluingKind k) {
  return k == GluingKind::photon_sphere ? "photon_sphere" : "minimal_boundary";
}

const Chart& PiecewiseManifold::chart(const std::string& id) const {
  for (const auto& c : charts)
    if (c.id == id) return c;
  throw Error(ErrorCode::invalid_argument, "no chart named " + id);
}

const Gluing& PiecewiseManifold::gluing(const std::string& id) const {
  for (const auto& g : gluings)
    if (g.id == id) return g;
  throw Error(ErrorCode::invalid_argument, "no gluing surface named " + id);
}

NeckParameters neck_parameters(const SurfaceGeometry& surface) {
  if (!(surface.area_radius > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "area radius must be positive", surface.area_radius);
  }
  const double mu = surface.area_radius / 3.0;
  return {mu, {2.0 * mu, surface.area_radius}};
}

PiecewiseManifold glue_neck(const RadialProfile& exterior, double r0, const GlueOptions& opts) {
  const IdentityReport audit = audit_sphere(exterior, r0, opts.audit_tol);
  if (!audit.photon_sphere) {
    const std::string what = audit.H_positive ? audit.worst_residual : std::string("H_positive");
    throw Error(ErrorCode::audit_refused,
                "r0 = " + std::to_string(r0) + " is not a photon sphere: " + what + " = " +
                    std::to_string(audit.worst_value),
                audit.worst_value);
  }
  const Interval dom = exterior.domain();
  const RadialProfile ext = dom.lo == r0 ? exterior : exterior.restricted(r0, dom.hi);

  const NeckParameters np = neck_parameters(surface_geometry(ext, r0));
  const double mu = opts.mu_override.value_or(np.mu);
  const double r_i = audit.area_radius;

  PiecewiseManifold m;
  m.mass_i = audit.mass_i;
  m.area_radius = r_i;
  m.mu = mu;
  m.charts.push_back({"neck+", make_neck_section(mu, r_i), Orientation::outward, 1, 3.0 * audit.mass_i / r_i, true});
  m.charts.push_back({"ext+", ext, Orientation::outward, 1, 1.0, false});
  m.gluings.push_back({"photon_sphere_1", "neck+", "ext+", r_i, r0, GluingKind::photon_sphere});
  m.ends.push_back("ext+");
  return m;
}

SideLimits side_limits(const Chart& chart, double r) {
  const FrameJet<double> f = chart.profile.frame(r);
  const double o = chart.orientation == Orientation::outward ? 1.0 : -1.0;
  const double k = chart.psi_sign * chart.psi_scale;
  SideLimits s;
  s.psi = chart.psi_sign * (chart.psi_scale * f.N.v);
  s.nu_psi = o * k * f.N.d;
  s.hess_psi = k * f.N.dd;
  s.area_radius = f.R.v;
  s.H = o * 2.0 * f.R.d / f.R.v;
  s.dgAB = s.H * s.area_radius * s.area_radius / s.nu_psi;
  s.g_psipsi = 1.0 / (s.nu_psi * s.nu_psi);
  s.dg_psipsi = -2.0 * s.nu_psi * s.nu_psi * s.hess_psi;
  return s;
}

double MatchReport::max_jump() const {
  return std::max({jump_psi, jump_nu_psi, jump_area_radius, jump_H, jump_dgAB, jump_g_psipsi, jump_dg_psipsi});
}

MatchReport compare_sides(const SideLimits& left, const SideLimits& right, std::string surface_id) {
  MatchReport rep;
  rep.surface_id = std::move(surface_id);
  rep.left = left;
  rep.right = right;
  rep.jump_psi = std::abs(left.psi - right.psi);
  rep.jump_nu_psi = std::abs(left.nu_psi - right.nu_psi);
  rep.jump_area_radius = std::abs(left.area_radius - right.area_radius);
  rep.jump_H = std::abs(left.H - right.H);
  rep.jump_dgAB = std::abs(left.dgAB - right.dgAB);
  rep.jump_g_psipsi = std::abs(left.g_psipsi - right.g_psipsi);
  rep.jump_dg_psipsi = std::abs(left.dg_psipsi - right.dg_psipsi);
  return rep;
}

MatchReport match_report(const PiecewiseManifold& manifold, const std::string& surface_id) {
  const Gluing& g = manifold.gluing(surface_id);
  return compare_sides(side_limits(manifold.chart(g.left), g.r_left), side_limits(manifold.chart(g.right), g.r_right),
                       surface_id);
}

namespace {

std::string mirror_id(const std::string& id) {
  if (id.empty()) return id;
  std::string out = id;
  char& last = out.back();
  if (last == '+') {
    last = '-';
  } else if (last == '-') {
    last = '+';
  } else {
    out += '-';
  }
  return out;
}

}  // namespace

PiecewiseManifold double_manifold(const PiecewiseManifold& manifold) {
  std::vector<const Chart*> necks;
  for (const auto& c : manifold.charts) {
    if (c.orientation == Orientation::reflected) {
      throw Error(ErrorCode::no_minimal_boundary, "manifold is already doubled");
    }
    if (c.neck && c.profile.limit_at(c.interval().lo) == EndpointLimit::horizon) necks.push_back(&c);
  }
  if (necks.empty()) throw Error(ErrorCode::no_minimal_boundary, "no minimal boundary to reflect through");

  PiecewiseManifold d = manifold;
  for (const auto& c : manifold.charts) {
    Chart r = c;
    r.id = mirror_id(c.id);
    r.orientation = Orientation::reflected;
    r.psi_sign = -c.psi_sign;
    d.charts.push_back(r);
  }
  int k = 0;
  for (const Chart* n : necks) {
    const double r_min = n->interval().lo;
    d.gluings.push_back({"minimal_" + std::to_string(++k), mirror_id(n->id), n->id, r_min, r_min,
                         GluingKind::minimal_boundary});
  }
  for (const auto& g : manifold.gluings) {
    d.gluings.push_back({g.id + "_reflected", mirror_id(g.right), mirror_id(g.left), g.r_right, g.r_left, g.kind});
  }
  for (const auto& e : manifold.ends) d.ends.push_back(mirror_id(e));
  return d;
}

ManifoldPoint reflect(const PiecewiseManifold& manifold, const ManifoldPoint& p) {
  ManifoldPoint q{mirror_id(p.chart), p.r};
  manifold.chart(q.chart);
  return q;
}

double psi_at(const PiecewiseManifold& manifold, const ManifoldPoint& p) {
  const Chart& c = manifold.chart(p.chart);
  if (!c.interval().contains(p.r)) throw Error(ErrorCode::domain_violation, "point outside chart " + c.id, p.r);
  return c.psi_sign * (c.psi_scale * c.profile.raw_jet(p.r).N.v);
}

PsiBoundReport psi_bound_check(const PiecewiseManifold& manifold, int n_samples) {
  if (n_samples < 2) throw Error(ErrorCode::invalid_argument, "psi bound check needs samples", n_samples);
  const std::size_t nc = manifold.charts.size();
  const int per_chart = std::max<int>(2, n_samples / static_cast<int>(nc));

  PsiBoundReport rep;
  rep.samples = per_chart * static_cast<int>(nc);
  for (const Chart& c : manifold.charts) {
    const Interval iv = c.interval();
    const auto values = parallel_indexed(per_chart, [&](std::size_t k) {
      const double r = k + 1 == static_cast<std::size_t>(per_chart) ? iv.hi : iv.lo + iv.width() * k / (per_chart - 1);
      return std::pair<double, double>{r, std::abs(psi_at(manifold, {c.id, r}))};
    });
    for (const auto& [r, v] : values) {
      if (v > rep.max_abs_psi || rep.argmax.chart.empty()) {
        rep.max_abs_psi = v;
        rep.argmax = {c.id, r};
      }
    }
  }
  for (const Gluing& g : manifold.gluings) {
    if (g.kind != GluingKind::photon_sphere) continue;
    const Chart& c = manifold.chart(g.right).neck ? manifold.chart(g.left) : manifold.chart(g.right);
    const double r = manifold.chart(g.right).neck ? g.r_left : g.r_right;
    rep.boundary_lapse.push_back(c.profile.lapse(r));
  }
  rep.ok = rep.max_abs_psi < 1.0 &&
           std::all_of(rep.boundary_lapse.begin(), rep.boundary_lapse.end(), [](double n) { return n < 1.0; });
  return rep;
}

double psi_harmonicity_residual(const PiecewiseManifold& manifold, int n_samples, double guard) {
  const int per_chart = std::max<int>(2, n_samples / static_cast<int>(manifold.charts.size()));
  double worst = 0.0;
  for (const Chart& c : manifold.charts) {
    const Interval iv = c.interval();
    const double a = iv.lo + guard * std::max(iv.lo, iv.width());
    const double b = iv.hi - guard * iv.hi;
    const auto lap = parallel_indexed(per_chart, [&](std::size_t k) {
      const double r = a + (b - a) * k / (per_chart - 1);
      return c.psi_sign * c.psi_scale * curvature_at(c.profile, r).lap_N;
    });
    for (double v : lap) worst = std::max(worst, std::abs(v));
  }
  return worst;
}

const ConformalChart& ConformalManifold::chart(const std::string& id) const {
  for (const auto& c : charts)
    if (c.id == id) return c;
  throw Error(ErrorCode::invalid_argument, "no conformal chart named " + id);
}

double ConformalManifold::u_at(const ManifoldPoint& p) const {
  const ConformalChart& c = chart(p.chart);
  if (!c.profile.domain().contains(p.r)) throw Error(ErrorCode::domain_violation, "point outside chart " + c.id, p.r);
  return c.profile.raw_jet(p.r).N.v;
}

ConformalManifold conformal_transform(const PiecewiseManifold& manifold, const ConformalOptions& opts) {
  ConformalManifold out;
  out.source = manifold;
  out.u_offset = opts.u_offset;
  out.u_quadratic = opts.u_quadratic;
  for (const Chart& c : manifold.charts) {
    out.charts.push_back({c.id, make_collar_conformal(c.profile, c.psi_sign, c.psi_scale, opts.u_offset, opts.u_quadratic),
                          c.orientation});
  }
  constexpr int probes = 257;
  for (const auto& c : out.charts) {
    const Interval iv = c.profile.domain();
    for (int k = 0; k < probes; ++k) {
      const double r = iv.lo + iv.width() * k / (probes - 1);
      const double u = out.u_at({c.id, r});
      if (!(u > 0.0)) throw Error(ErrorCode::invalid_argument, "conformal factor u is not positive on chart " + c.id, r);
    }
  }
  return out;
}

}  // namespace psu
