#include "pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "error.hpp"
#include "fd_oracle.hpp"
#include "parallel.hpp"

namespace psu {

const char* to_string(Verdict v) { return v == Verdict::schwarzschild_rigid ? "schwarzschild_rigid" : "not_rigid"; }

namespace {

void require_guarded(const RadialProfile& chart, const ManifoldPoint& p, double guard) {
  const Interval iv = chart.domain();
  if (!(p.r - iv.lo >= guard * p.r && iv.hi - p.r >= guard * p.r)) {
    throw Error(ErrorCode::guard_band, "sample inside the guard band of chart " + p.chart, p.r);
  }
}

RadialProfile extended_to(const RadialProfile& chart, double r_max) {
  const Interval iv = chart.domain();
  return r_max <= iv.hi ? chart : chart.restricted(iv.lo, r_max);
}

void require_schedule(const std::vector<double>& radii, std::size_t min_entries) {
  if (radii.size() < min_entries) {
    throw Error(ErrorCode::invalid_argument, "schedule needs at least " + std::to_string(min_entries) + " entries",
                static_cast<double>(radii.size()));
  }
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (!(radii[k] > 0.0) || (k > 0 && !(radii[k] > radii[k - 1]))) {
      throw Error(ErrorCode::invalid_argument, "schedule must be positive and increasing", radii[k]);
    }
  }
}

double sphere_mass(const RadialProfile& chart, double r) {
  // g = a delta + b n n in Cartesian coordinates with a = R^2/r^2.
  const MetricJet<double> j = chart.jet(r);
  const double R = j.R.v, Rp = j.R.d;
  const double a = R * R / (r * r);
  const double b = j.A.v * j.A.v - a;
  const double ap = 2.0 * R * (Rp * r - R) / (r * r * r);
  return 0.5 * r * (b - r * ap);
}

}  // namespace

std::vector<ManifoldPoint> guarded_samples(const ConformalManifold& conformal, int n, double guard) {
  const int per_chart = std::max<int>(2, n / static_cast<int>(conformal.charts.size()));
  std::vector<ManifoldPoint> out;
  for (const auto& c : conformal.charts) {
    const Interval iv = c.profile.domain();
    const double a = iv.lo * (1.0 + 2.0 * guard);
    const double b = iv.hi * (1.0 - 2.0 * guard);
    for (int k = 0; k < per_chart; ++k) out.push_back({c.id, a + (b - a) * k / (per_chart - 1)});
  }
  return out;
}

ScalarResidualReport conformal_scalar_residual(const ConformalManifold& conformal,
                                               const std::vector<ManifoldPoint>& samples, double guard) {
  for (const auto& p : samples) require_guarded(conformal.chart(p.chart).profile, p, guard);
  ScalarResidualReport rep;
  rep.samples = parallel_indexed(samples.size(), [&](std::size_t i) {
    const ManifoldPoint& p = samples[i];
    const RadialProfile& prof = conformal.chart(p.chart).profile;
    const Interval iv = prof.domain();
    const double h = std::min(1e-5 * p.r, 2e-4 * std::min(p.r - iv.lo, iv.hi - p.r));
    return SampleValue{p, conformal.u_at(p), fd_curvature_richardson(prof, p.r, h).scalar};
  });
  for (const auto& s : rep.samples) {
    if (std::abs(s.value) > rep.max_abs || rep.argmax.chart.empty()) {
      rep.max_abs = std::abs(s.value);
      rep.argmax = s.at;
    }
  }
  return rep;
}

AdmEstimate adm_mass_estimate(const RadialProfile& chart, const std::vector<double>& radii) {
  require_schedule(radii, 3);
  const RadialProfile ext = extended_to(chart, radii.back());
  if (radii.front() < ext.domain().lo) {
    throw Error(ErrorCode::domain_violation, "ADM schedule starts inside the chart's inner boundary", radii.front());
  }
  AdmEstimate est;
  est.radii = radii;
  for (double r : radii) est.integrand.push_back(sphere_mass(ext, r));

  // Neville tableau at x = 1/r -> 0.
  const std::size_t n = radii.size();
  std::vector<std::vector<double>> T(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    T[i][0] = est.integrand[i];
    for (std::size_t j = 1; j <= i; ++j) {
      const double xi = 1.0 / radii[i], xij = 1.0 / radii[i - j];
      T[i][j] = (xij * T[i][j - 1] - xi * T[i - 1][j - 1]) / (xij - xi);
    }
  }
  est.mass = T[n - 1][n - 1];
  est.error_bar = std::abs(T[n - 1][n - 1] - T[n - 1][n - 2]);
  return est;
}

AdmEstimate adm_mass_estimate(const PiecewiseManifold& manifold, const std::string& end_id,
                              const std::vector<double>& radii) {
  if (std::find(manifold.ends.begin(), manifold.ends.end(), end_id) == manifold.ends.end()) {
    throw Error(ErrorCode::invalid_argument, "chart " + end_id + " does not carry an end");
  }
  return adm_mass_estimate(manifold.chart(end_id).profile, radii);
}

AdmEstimate adm_mass_estimate(const ConformalManifold& conformal, const std::string& end_id,
                              const std::vector<double>& radii) {
  const auto& ends = conformal.source.ends;
  if (std::find(ends.begin(), ends.end(), end_id) == ends.end()) {
    throw Error(ErrorCode::invalid_argument, "chart " + end_id + " does not carry an end");
  }
  const ConformalChart& c = conformal.chart(end_id);
  if (c.orientation == Orientation::reflected) {
    throw Error(ErrorCode::invalid_argument, "end " + end_id + " is compactified by u^4 g; use compactification_check");
  }
  return adm_mass_estimate(c.profile, radii);
}

CompactificationReport compactification_check(const ConformalManifold& conformal, const std::vector<double>& R_schedule) {
  if (R_schedule.size() < 2) throw Error(ErrorCode::invalid_argument, "compactification needs two radii or more");
  const ConformalChart* end = nullptr;
  for (const auto& id : conformal.source.ends) {
    const ConformalChart& c = conformal.chart(id);
    if (c.orientation == Orientation::reflected) end = &c;
  }
  if (!end) throw Error(ErrorCode::invalid_argument, "no reflected end to compactify");

  CompactificationReport rep;
  rep.end_id = end->id;
  rep.R = R_schedule;
  std::sort(rep.R.begin(), rep.R.end(), std::greater<>());
  const RadialProfile chart = extended_to(end->profile, 1.0 / rep.R.back());
  const double m_i = conformal.source.mass_i;
  rep.reference = std::pow(0.5 * m_i, 4);

  for (double R : rep.R) {
    const double r = 1.0 / R;
    const MetricJet<double> j = chart.jet(r);
    const double t = j.R.v * r;
    const double a = j.A.v * r * r;
    rep.f_T.push_back(t * t);
    rep.f_R.push_back(a * a);
    rep.error.push_back(std::max(std::abs(t * t - rep.reference), std::abs(a * a - rep.reference)));
  }
  for (std::size_t k = 0; k + 1 < rep.R.size(); ++k) {
    rep.rates.push_back(std::log(rep.error[k] / rep.error[k + 1]) / std::log(rep.R[k] / rep.R[k + 1]));
  }

  // Linear extrapolation to R = 0 from the two smallest radii.
  const std::size_t n = rep.R.size();
  auto extrapolate = [&](const std::vector<double>& f) {
    return (rep.R[n - 2] * f[n - 1] - rep.R[n - 1] * f[n - 2]) / (rep.R[n - 2] - rep.R[n - 1]);
  };
  rep.limit = 0.5 * (extrapolate(rep.f_T) + extrapolate(rep.f_R));
  rep.m_hat = rep.limit > 0.0 ? 2.0 * std::pow(rep.limit, 0.25) : std::numeric_limits<double>::quiet_NaN();

  rep.ok = true;
  for (std::size_t k = 0; k < rep.rates.size(); ++k) {
    if (!std::isfinite(rep.rates[k]) || !(rep.error[k + 1] < rep.error[k])) {
      rep.ok = false;
      rep.flag = "divergent: metric factor does not approach (m/2)^4";
      break;
    }
    if (rep.rates[k] < 0.8) {
      rep.ok = false;
      rep.flag = "convergence slower than linear in R";
      break;
    }
  }
  return rep;
}

FlatnessReport flatness_check(const ConformalManifold& conformal, const std::vector<ManifoldPoint>& samples, double guard) {
  for (const auto& p : samples) require_guarded(conformal.chart(p.chart).profile, p, guard);
  FlatnessReport rep;
  rep.samples = parallel_indexed(samples.size(), [&](std::size_t i) {
    const ManifoldPoint& p = samples[i];
    return SampleValue{p, conformal.u_at(p), curvature_at(conformal.chart(p.chart).profile, p.r).max_curvature()};
  });
  for (const auto& s : rep.samples) {
    if (s.value > rep.max_curvature || rep.argmax.chart.empty()) {
      rep.max_curvature = s.value;
      rep.argmax = s.at;
    }
  }
  return rep;
}

bool PipelineReport::masses_ok() const {
  return std::abs(adm_exterior.mass - mass_i) <= options.mass_tol && std::abs(adm_conformal.mass) <= options.mass_tol;
}

PipelineReport run_pipeline(const RadialProfile& exterior, const PipelineOptions& opts) {
  PipelineReport rep;
  rep.options = opts;
  rep.r0 = opts.r0.value_or(exterior.domain().lo);

  // Audit and neck gluing.
  GlueOptions glue;
  glue.audit_tol = opts.relaxed_gates ? std::numeric_limits<double>::infinity() : opts.match_tol;
  rep.audit = audit_sphere(exterior, rep.r0, opts.match_tol);
  const PiecewiseManifold glued = glue_neck(exterior, rep.r0, glue);
  rep.mass_i = glued.mass_i;
  rep.mu = glued.mu;

  // Doubling, matching and the collar function.
  const PiecewiseManifold doubled = double_manifold(glued);
  for (const auto& g : doubled.gluings) {
    rep.matches.push_back(match_report(doubled, g.id));
    rep.max_match_jump = std::max(rep.max_match_jump, rep.matches.back().max_jump());
  }
  rep.psi_bound = psi_bound_check(doubled, opts.psi_samples);
  if (!rep.psi_bound.ok && !opts.relaxed_gates) {
    throw Error(ErrorCode::audit_refused,
                "|psi| >= 1 at chart " + rep.psi_bound.argmax.chart + ", r = " + std::to_string(rep.psi_bound.argmax.r),
                rep.psi_bound.max_abs_psi);
  }
  rep.harmonicity = psi_harmonicity_residual(doubled, opts.samples, opts.guard);

  // Conformal metric, scalar flatness, masses and compactification.
  const ConformalManifold conf = conformal_transform(doubled, opts.corruption);
  const std::vector<ManifoldPoint> pts = guarded_samples(conf, opts.samples, opts.guard);
  rep.scalar = conformal_scalar_residual(conf, pts, opts.guard);

  std::vector<double> radii, Rs;
  for (double s : opts.adm_schedule) radii.push_back(s * rep.mass_i);
  for (double s : opts.R_schedule) Rs.push_back(s / rep.mass_i);
  // Tabulated data cannot be evaluated past its last node; those stages are
  // then reported as unavailable rather than aborting the run.
  auto unavailable = [&](const char* stage, const Error& e) {
    if (e.code() != ErrorCode::domain_violation) throw e;
    rep.notes.push_back(std::string(stage) + " unavailable: " + e.what());
  };
  const double nan = std::numeric_limits<double>::quiet_NaN();
  try {
    rep.adm_exterior = adm_mass_estimate(doubled, doubled.ends.front(), radii);
  } catch (const Error& e) {
    unavailable("exterior ADM mass", e);
    rep.adm_exterior = {nan, nan, radii, {}};
  }
  try {
    rep.adm_conformal = adm_mass_estimate(conf, doubled.ends.front(), radii);
  } catch (const Error& e) {
    unavailable("conformal ADM mass", e);
    rep.adm_conformal = {nan, nan, radii, {}};
  }
  try {
    rep.compactification = compactification_check(conf, Rs);
  } catch (const Error& e) {
    unavailable("compactification", e);
    rep.compactification.R = Rs;
    rep.compactification.m_hat = nan;
    rep.compactification.flag = "schedule outside the data";
  }

  // Rigidity.
  rep.flatness = flatness_check(conf, pts, opts.guard);
  rep.verdict = rep.flatness.max_curvature <= opts.flat_tol && rep.max_match_jump <= opts.match_tol
                    ? Verdict::schwarzschild_rigid
                    : Verdict::not_rigid;
  if (rep.verdict == Verdict::schwarzschild_rigid) rep.reconstruction = reconstruct_schwarzschild(rep);
  return rep;
}

Reconstruction reconstruct_schwarzschild(const PipelineReport& report) {
  if (report.verdict != Verdict::schwarzschild_rigid) {
    throw Error(ErrorCode::not_rigid, "reconstruction needs a rigid pipeline verdict", report.flatness.max_curvature);
  }
  Reconstruction r;
  r.mass = report.mu;
  r.r_photon = 3.0 * r.mass;
  r.spacetime_H = 1.0 / (std::sqrt(3.0) * r.mass);
  r.audit_discrepancy = std::max({std::abs(r.mass - report.audit.mass_from_H),
                                  std::abs(r.r_photon - report.audit.area_radius),
                                  std::abs(r.spacetime_H - report.audit.spacetime_H)});
  return r;
}

}  // namespace psu
