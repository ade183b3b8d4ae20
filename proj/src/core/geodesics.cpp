#include "geodesics.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include <boost/numeric/odeint.hpp>

#include "error.hpp"

namespace boost::numeric::odeint::detail {
template <>
struct extract_value_type<boost::multiprecision::float128, void> {
  typedef boost::multiprecision::float128 type;
};
}  // namespace boost::numeric::odeint::detail

namespace psu {

namespace {

Quad fermat_H(const RadialProfile& fermat, const Quad& r) {
  const FrameJet<Quad> f = fermat.raw_frame(r);
  return 2 * f.R.d / f.R.v;
}

void require_open(const RadialProfile& profile, double r, const char* what) {
  if (!profile.domain().interior(r) && !(profile.domain().contains(r) && profile.limit_at(r) == EndpointLimit::none)) {
    throw Error(ErrorCode::domain_violation, std::string(what) + ": radius outside the profile domain", r);
  }
}

double length_scale(const RadialProfile& profile, double r0) {
  const auto m = profile.parameter();
  return (m && *m > 0.0) ? *m : r0 / 3.0;
}

}  // namespace

RadialProfile fermat_profile(const RadialProfile& profile) {
  const Interval dom = profile.domain();
  constexpr int probes = 65;
  for (int k = 0; k < probes; ++k) {
    const double r = dom.lo + dom.width() * k / (probes - 1);
    const double N = profile.raw_jet(r).N.v;
    if (!(N > 0.0)) throw Error(ErrorCode::domain_violation, "Fermat metric needs N > 0 on the domain", r);
  }
  return make_fermat(profile);
}

double fermat_geodesy_residual(const RadialProfile& profile, double r0) {
  require_open(profile, r0, "fermat_geodesy_residual");
  if (!(profile.raw_jet(r0).N.v > 0.0)) {
    throw Error(ErrorCode::domain_violation, "Fermat residual needs N > 0", r0);
  }
  return to_double(fermat_H(make_fermat(profile), Quad(r0)));
}

std::vector<double> photon_sphere_search(const RadialProfile& profile, const PhotonSearchOptions& opts) {
  Interval win = opts.window.value_or(profile.domain());
  win.lo = std::max(win.lo, profile.domain().lo);
  win.hi = std::min(win.hi, profile.domain().hi);
  std::vector<double> roots;
  if (!(win.hi > win.lo) || opts.scan_points < 2) return roots;

  const RadialProfile fermat = make_fermat(profile);
  std::vector<double> xs;
  std::vector<Quad> fs;
  for (int k = 0; k < opts.scan_points; ++k) {
    const double r = k + 1 == opts.scan_points ? win.hi : win.lo + win.width() * k / (opts.scan_points - 1);
    if (profile.limit_at(r) != EndpointLimit::none) continue;
    if (!(profile.raw_jet(r).N.v > 0.0)) continue;
    const Quad h = fermat_H(fermat, Quad(r));
    if (isnan(h)) continue;
    xs.push_back(r);
    fs.push_back(h);
  }

  auto push = [&](double r) {
    if (roots.empty() || std::abs(roots.back() - r) > 1e-10 * r) roots.push_back(r);
  };
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (fs[k] == 0) {
      push(xs[k]);
      continue;
    }
    if (k + 1 == xs.size() || fs[k + 1] == 0 || (fs[k] > 0) == (fs[k + 1] > 0)) continue;

    // Illinois false position with a bisection fallback.
    Quad a = xs[k], b = xs[k + 1], fa = fs[k], fb = fs[k + 1];
    int side = 0;
    for (int it = 0; it < 400 && b - a > Quad(1e-30) * b; ++it) {
      Quad c = (a * fb - b * fa) / (fb - fa);
      if (!(c > a && c < b) || it % 8 == 7) c = (a + b) / 2;
      const Quad fc = fermat_H(fermat, c);
      if (fc == 0) {
        a = b = c;
        break;
      }
      if ((fc > 0) == (fb > 0)) {
        b = c;
        fb = fc;
        if (side == -1) fa /= 2;
        side = -1;
      } else {
        a = c;
        fa = fc;
        if (side == 1) fb /= 2;
        side = 1;
      }
    }
    push(to_double((a + b) / 2));
  }
  return roots;
}

double impact_parameter(const RadialProfile& profile, double r0) {
  require_open(profile, r0, "impact_parameter");
  const MetricJet<double> j = profile.raw_jet(r0);
  if (!(j.N.v > 0.0)) throw Error(ErrorCode::domain_violation, "impact parameter needs N > 0", r0);
  return j.R.v / j.N.v;
}

NullGeodesicState tangent_launch(const RadialProfile& profile, double r0, double E) {
  NullGeodesicState s;
  s.r = r0;
  s.E = E;
  s.L = E * impact_parameter(profile, r0);
  return s;
}

const char* to_string(Termination t) {
  switch (t) {
    case Termination::lambda_max: return "lambda_max";
    case Termination::domain_exit: return "domain_exit";
    case Termination::horizon_approach: return "horizon_approach";
  }
  return "?";
}

const char* to_string(TrapVerdict v) {
  switch (v) {
    case TrapVerdict::trapped: return "trapped";
    case TrapVerdict::escaped: return "escaped";
    case TrapVerdict::fell_in: return "fell_in";
  }
  return "?";
}

namespace {

using State = std::array<Quad, 6>;  // t, r, phi, tdot, rdot, phidot

struct Equatorial {
  const RadialProfile& profile;

  void operator()(const State& x, State& dx, const Quad&) const {
    const MetricJet<Quad> j = profile.raw_jet(x[1]);
    const Quad &N = j.N.v, &Np = j.N.d, &A = j.A.v, &Ap = j.A.d, &R = j.R.v, &Rp = j.R.d;
    dx[0] = x[3];
    dx[1] = x[4];
    dx[2] = x[5];
    dx[3] = -2 * (Np / N) * x[3] * x[4];
    dx[4] = -(N * Np * x[3] * x[3] + A * Ap * x[4] * x[4] - R * Rp * x[5] * x[5]) / (A * A);
    dx[5] = -2 * (Rp / R) * x[4] * x[5];
  }
};

struct Invariants {
  Quad constraint, E, L;
};

Invariants invariants(const RadialProfile& profile, const State& x, const Quad& E0) {
  const MetricJet<Quad> j = profile.raw_jet(x[1]);
  const Quad N2 = j.N.v * j.N.v, A2 = j.A.v * j.A.v, R2 = j.R.v * j.R.v;
  const Quad c = -N2 * x[3] * x[3] + A2 * x[4] * x[4] + R2 * x[5] * x[5];
  return {c / (E0 * E0), N2 * x[3], R2 * x[5]};
}

bool finite_state(const State& x) {
  for (const Quad& v : x)
    if (!isfinite(v)) return false;
  return true;
}

}  // namespace

Trajectory integrate_null_geodesic(const RadialProfile& profile, const NullGeodesicState& init,
                                   const IntegrationOptions& opts) {
  if (!(opts.tol > 0.0)) throw Error(ErrorCode::invalid_argument, "integration tolerance must be positive", opts.tol);
  if (!(opts.lambda_max > 0.0)) throw Error(ErrorCode::invalid_argument, "lambda_max must be positive", opts.lambda_max);
  if (!(init.E > 0.0)) throw Error(ErrorCode::non_null_initial_data, "photon energy must be positive", init.E);
  require_open(profile, init.r, "integrate_null_geodesic");

  const MetricJet<double> j0 = profile.raw_jet(init.r);
  const double c0 = -init.E * init.E / (j0.N.v * j0.N.v) + init.p_r * init.p_r / (j0.A.v * j0.A.v) +
                    init.L * init.L / (j0.R.v * j0.R.v);
  if (!(std::abs(c0) <= 1e-12 * init.E * init.E)) {
    throw Error(ErrorCode::non_null_initial_data, "initial data violates the null constraint", c0);
  }

  // Re-solve E in binary128 so the start is null to working precision.
  const MetricJet<Quad> jq = profile.raw_jet(Quad(init.r));
  const Quad A2 = jq.A.v * jq.A.v, R2 = jq.R.v * jq.R.v;
  const Quad pr(init.p_r), L(init.L);
  const Quad E = jq.N.v * sqrt(pr * pr / A2 + L * L / R2);
  State x{Quad(0), Quad(init.r), Quad(init.phi), E / (jq.N.v * jq.N.v), pr / A2, L / R2};

  namespace ode = boost::numeric::odeint;
  auto stepper = ode::make_controlled(Quad(opts.tol), Quad(opts.tol), ode::runge_kutta_fehlberg78<State, Quad>());
  const Equatorial rhs{profile};

  Trajectory out;
  const Interval dom = profile.domain();
  const bool horizon_below = profile.raw_jet(dom.lo).N.v <= 0.0 || profile.limit_at(dom.lo) == EndpointLimit::horizon;
  const double max_step = opts.max_step > 0.0 ? opts.max_step : opts.lambda_max / 1000.0;
  const Quad min_step = Quad(opts.min_step * opts.lambda_max);
  const Quad lam_end(opts.lambda_max);

  Invariants ref = invariants(profile, x, E);
  const Quad E_ref = ref.E, L_ref = ref.L;
  Quad prev_c = ref.constraint;
  auto record = [&](const Quad& lam, const Invariants& inv) {
    TrajectoryPoint p;
    p.lambda = init.lambda + to_double(lam);
    p.r = to_double(x[1]);
    p.phi = to_double(x[2]);
    p.p_r = to_double(x[4] * profile.raw_jet(x[1]).A.v * profile.raw_jet(x[1]).A.v);
    p.constraint = to_double(inv.constraint);
    out.points.push_back(p);
    out.max_constraint = std::max(out.max_constraint, std::abs(p.constraint));
    out.max_constraint_step = std::max(out.max_constraint_step, to_double(abs(inv.constraint - prev_c)));
    prev_c = inv.constraint;
    out.E_drift = std::max(out.E_drift, to_double(abs(inv.E - E_ref) / abs(E_ref)));
    if (L_ref != 0) out.L_drift = std::max(out.L_drift, to_double(abs(inv.L - L_ref) / abs(L_ref)));
  };
  record(Quad(0), ref);

  Quad lam = 0;
  Quad dt = Quad(std::min(max_step, 1e-2 * opts.lambda_max));
  while (lam < lam_end) {
    if (lam + dt > lam_end) dt = lam_end - lam;
    const State saved = x;
    const Quad lam_saved = lam, dt_saved = dt;
    const auto res = stepper.try_step(rhs, x, lam, dt);
    if (res == ode::fail || !finite_state(x)) {
      if (res != ode::fail) {
        x = saved;
        lam = lam_saved;
        dt /= 4;
      }
      ++out.rejected_steps;
      if (dt < min_step) {
        throw Error(ErrorCode::step_underflow, "adaptive step fell below the minimum step", to_double(lam));
      }
      continue;
    }
    const double r = to_double(x[1]);
    const double slack = 1e-9 * std::max(1.0, std::abs(r));
    if (r < dom.lo - slack || r > dom.hi + slack) {
      // Left the domain: retry with half the step so the last recorded
      // point lands on the boundary instead of past it.
      x = saved;
      lam = lam_saved;
      dt = dt_saved / 2;
      if (dt < min_step) {
        out.reason = Termination::domain_exit;
        return out;
      }
      continue;
    }
    if (dt > Quad(max_step)) dt = Quad(max_step);
    const Invariants inv = invariants(profile, x, E);
    record(lam, inv);

    if (horizon_below && profile.raw_jet(r).N.v < 1e-6) {
      out.reason = Termination::horizon_approach;
      return out;
    }
    if (r <= dom.lo + slack || r >= dom.hi - slack) {
      out.reason = Termination::domain_exit;
      return out;
    }
  }
  out.reason = Termination::lambda_max;
  return out;
}

TrappingReport trapping_test(const RadialProfile& profile, double r0, const TrappingOptions& opts) {
  const double ell = length_scale(profile, r0);
  TrappingReport rep;
  rep.r0 = r0;
  rep.window = opts.window * ell;
  rep.trap_tol = opts.trap_tol * ell;
  IntegrationOptions io;
  io.lambda_max = rep.window;
  io.tol = opts.tol;
  const Trajectory t = integrate_null_geodesic(profile, tangent_launch(profile, r0), io);
  for (const auto& p : t.points) rep.max_radial_deviation = std::max(rep.max_radial_deviation, std::abs(p.r - r0));
  if (rep.max_radial_deviation <= rep.trap_tol) {
    rep.verdict = TrapVerdict::trapped;
  } else {
    rep.verdict = t.points.back().r > r0 ? TrapVerdict::escaped : TrapVerdict::fell_in;
  }
  return rep;
}

std::string trajectory_csv(const Trajectory& t) {
  std::string out = "lambda,r,phi,p_r,constraint\n";
  char buf[160];
  for (const auto& p : t.points) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", p.lambda, p.r, p.phi, p.p_r, p.constraint);
    out += buf;
  }
  return out;
}

}  // namespace psu
