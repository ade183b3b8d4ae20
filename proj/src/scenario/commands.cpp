#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "audit.hpp"
#include "config.hpp"
#include "curvature.hpp"
#include "error.hpp"
#include "geodesics.hpp"
#include "manifold.hpp"
#include "parallel.hpp"
#include "pipeline.hpp"
#include "profile_model.hpp"

namespace psu::scenario {

namespace {

// Keys read by every command.
struct Common {
  ConfigReader rd;
  Json metric;
  RadialProfile profile;
  int samples = 512;
  double tol = 0.0;

  Common(Json doc, const MetricDefaults& defaults, double default_tol)
      : rd(std::move(doc)), metric(), profile(profile_from_json(rd.raw().value("metric", Json()), defaults, metric)) {
    rd.record("metric", metric);
    samples = rd.integer("samples", 512);
    tol = rd.number("tol", default_tol);
    rd.text("out", "");
    const int threads = rd.integer("threads", 0);
    // Neither changes any result; keep reports identical across them.
    rd.drop("out");
    rd.drop("threads");
    if (samples < 1) throw Error(ErrorCode::config, "samples must be positive", samples);
    if (!(tol > 0.0)) throw Error(ErrorCode::config, "tol must be positive", tol);
    if (threads < 0) throw Error(ErrorCode::config, "threads must be non-negative", threads);
    if (threads > 0) set_thread_count(static_cast<unsigned>(threads));
  }
};

std::string csv_join(std::initializer_list<std::string> cells) {
  std::string out;
  bool first = true;
  for (const auto& c : cells) {
    if (!first) out += ',';
    out += c;
    first = false;
  }
  return out + "\n";
}

Json point_json(const ManifoldPoint& p) { return Json{{"chart", p.chart}, {"r", p.r}}; }

Json identity_json(const IdentityReport& a) {
  return Json{{"r0", a.r0},
              {"area_radius", a.area_radius},
              {"N", a.N},
              {"H", a.H},
              {"nu_N", a.nu_N},
              {"sigma_scalar", a.sigma_scalar},
              {"res_umbilic", a.res_umbilic},
              {"res_NH", a.res_NH},
              {"res_rH", a.res_rH},
              {"res_sigmaR", a.res_sigmaR},
              {"res_chain", a.res_chain},
              {"mass_i", a.mass_i},
              {"H_positive", a.H_positive},
              {"spacetime_H", a.spacetime_H},
              {"mass_from_H", a.mass_from_H},
              {"tol", a.tol},
              {"photon_sphere", a.photon_sphere},
              {"worst_residual", a.worst_residual},
              {"worst_value", a.worst_value}};
}

const char* audit_csv_header() {
  return "r0,area_radius,N,H,nu_N,res_umbilic,res_NH,res_rH,res_sigmaR,mass_i,mass_from_H,H_positive,photon_sphere\n";
}

std::string audit_csv_row(const IdentityReport& a) {
  return csv_join({fmt(a.r0), fmt(a.area_radius), fmt(a.N), fmt(a.H), fmt(a.nu_N), fmt(a.res_umbilic), fmt(a.res_NH),
                   fmt(a.res_rH), fmt(a.res_sigmaR), fmt(a.mass_i), fmt(a.mass_from_H), a.H_positive ? "1" : "0",
                   a.photon_sphere ? "1" : "0"});
}

Json match_json(const MatchReport& m) {
  auto side = [](const SideLimits& s) {
    return Json{{"psi", s.psi},         {"nu_psi", s.nu_psi},     {"area_radius", s.area_radius},
                {"H", s.H},             {"dgAB", s.dgAB},         {"g_psipsi", s.g_psipsi},
                {"dg_psipsi", s.dg_psipsi}, {"hess_psi", s.hess_psi}};
  };
  return Json{{"surface", m.surface_id},
              {"jumps",
               {{"psi", m.jump_psi},
                {"nu_psi", m.jump_nu_psi},
                {"area_radius", m.jump_area_radius},
                {"H", m.jump_H},
                {"dgAB", m.jump_dgAB},
                {"g_psipsi", m.jump_g_psipsi},
                {"dg_psipsi", m.jump_dg_psipsi}}},
              {"max_jump", m.max_jump()},
              {"left", side(m.left)},
              {"right", side(m.right)}};
}

std::string match_csv(const std::vector<MatchReport>& reports) {
  std::string out = "surface,quantity,left,right,jump\n";
  for (const auto& m : reports) {
    const std::pair<const char*, std::array<double, 3>> rows[] = {
        {"psi", {m.left.psi, m.right.psi, m.jump_psi}},
        {"nu_psi", {m.left.nu_psi, m.right.nu_psi, m.jump_nu_psi}},
        {"area_radius", {m.left.area_radius, m.right.area_radius, m.jump_area_radius}},
        {"H", {m.left.H, m.right.H, m.jump_H}},
        {"dgAB", {m.left.dgAB, m.right.dgAB, m.jump_dgAB}},
        {"g_psipsi", {m.left.g_psipsi, m.right.g_psipsi, m.jump_g_psipsi}},
        {"dg_psipsi", {m.left.dg_psipsi, m.right.dg_psipsi, m.jump_dg_psipsi}},
    };
    for (const auto& [name, v] : rows) out += csv_join({m.surface_id, name, fmt(v[0]), fmt(v[1]), fmt(v[2])});
  }
  return out;
}

Json manifold_json(const PiecewiseManifold& m) {
  Json charts = Json::array(), gluings = Json::array();
  for (const auto& c : m.charts) {
    charts.push_back(Json{{"id", c.id},
                          {"profile", c.profile.describe()},
                          {"r_lo", c.interval().lo},
                          {"r_hi", c.interval().hi},
                          {"orientation", to_string(c.orientation)},
                          {"psi_sign", c.psi_sign},
                          {"psi_scale", c.psi_scale},
                          {"neck", c.neck}});
  }
  for (const auto& g : m.gluings) {
    gluings.push_back(Json{{"id", g.id},
                           {"left", g.left},
                           {"right", g.right},
                           {"r_left", g.r_left},
                           {"r_right", g.r_right},
                           {"kind", to_string(g.kind)}});
  }
  return Json{{"charts", charts}, {"gluings", gluings}, {"ends", m.ends}, {"mass_i", m.mass_i},
              {"area_radius", m.area_radius}, {"mu", m.mu}};
}

// ---------------------------------------------------------------- verify

struct SourcedResiduals {
  double nn, tt, scalar, lap;
};

// Residuals of N Ric - Hess N = 4 pi N (rho - p) g, R = 16 pi rho,
// Lap N = 4 pi N (rho + 3p); the source vanishes outside matter.
SourcedResiduals sourced(const RadialProfile& p, const CurvatureSample& c, double r) {
  FluidSource src;
  const detail::FluidModel* fluid = std::get_if<detail::FluidModel>(&p.model().impl);
  if (const auto* pw = std::get_if<detail::PiecewiseModel>(&p.model().impl)) {
    fluid = std::get_if<detail::FluidModel>(&pw->pieces.front().model().impl);
  }
  if (fluid) src = fluid_source(fluid->m, fluid->r_body, r);
  const double N = p.raw_jet(r).N.v;
  const double pi4 = 4.0 * std::numbers::pi;
  return {c.vac_residual_nn - pi4 * N * (src.density - src.pressure),
          c.vac_residual_tt - pi4 * N * (src.density - src.pressure), c.scalar_residual - 4.0 * pi4 * src.density,
          c.lap_residual - pi4 * N * (src.density + 3.0 * src.pressure)};
}

CommandResult cmd_verify(Json doc) {
  Common cm(std::move(doc), {}, 1e-10);
  cm.rd.reject_unknown();
  const Interval d = cm.profile.domain();
  const int n = cm.samples;

  struct Row {
    CurvatureSample c;
    SourcedResiduals s;
    double trace = 0.0;
  };
  const auto rows = parallel_indexed(static_cast<std::size_t>(n), [&](std::size_t k) {
    const double r = d.lo + d.width() * (static_cast<double>(k) + 0.5) / n;
    Row row;
    row.c = curvature_at(cm.profile, r);
    row.s = sourced(cm.profile, row.c, r);
    row.trace = std::abs(row.c.scalar - (row.c.ric_nn + 2.0 * row.c.ric_tt));
    return row;
  });

  std::string csv =
      "r,ric_nn,ric_tt,scalar,hess_nn,hess_tt,lap_N,residual_nn,residual_tt,residual_scalar,residual_lap,"
      "interp_error_bound\n";
  double worst = -1.0, worst_r = 0.0, max_trace = 0.0, max_bound = 0.0;
  std::string worst_field;
  for (const auto& row : rows) {
    const auto& c = row.c;
    csv += csv_join({fmt(c.r), fmt(c.ric_nn), fmt(c.ric_tt), fmt(c.scalar), fmt(c.hess_nn), fmt(c.hess_tt),
                     fmt(c.lap_N), fmt(row.s.nn), fmt(row.s.tt), fmt(row.s.scalar), fmt(row.s.lap),
                     fmt(c.interp_error_bound)});
    const std::pair<const char*, double> fields[] = {
        {"residual_nn", row.s.nn}, {"residual_tt", row.s.tt}, {"residual_scalar", row.s.scalar}, {"residual_lap", row.s.lap}};
    for (const auto& [name, v] : fields) {
      if (std::abs(v) > worst) {
        worst = std::abs(v);
        worst_r = c.r;
        worst_field = name;
      }
    }
    max_trace = std::max(max_trace, row.trace);
    max_bound = std::max(max_bound, c.interp_error_bound);
  }
  const bool pass = worst <= cm.tol;

  CommandResult res;
  res.exit_code = pass ? exit_ok : exit_verification_failure;
  Json rep{{"command", "verify"},
           {"config", cm.rd.resolved()},
           {"profile", cm.profile.describe()},
           {"samples", n},
           {"max_residual", worst},
           {"worst_sample", {{"r", worst_r}, {"field", worst_field}, {"value", worst}}},
           {"max_trace_defect", max_trace},
           {"max_interp_error_bound", max_bound},
           {"tol", cm.tol},
           {"pass", pass},
           {"exit_code", res.exit_code}};
  res.json = rep.dump(2) + "\n";
  res.csv = std::move(csv);
  res.artifacts.emplace_back("profile.json", profile_to_json(cm.profile).dump(2) + "\n");
  std::ostringstream s;
  s.precision(6);
  s << (pass ? "PASS" : "FAIL") << ": max residual " << worst << " at r = " << std::setprecision(10) << worst_r << " ("
    << worst_field << "), tol " << std::setprecision(3) << cm.tol << ", " << n << " samples\n";
  res.summary = s.str();
  return res;
}

// --------------------------------------------------------- photon-search

CommandResult cmd_photon_search(Json doc) {
  Common cm(std::move(doc), {}, 1e-12);
  const bool trajectories = cm.rd.boolean("trajectory", false);
  const double window = cm.rd.number("window", 50.0);
  const double trap_tol = cm.rd.number("trap_tol", 1e-3);
  cm.rd.reject_unknown();

  const std::vector<double> roots = photon_sphere_search(cm.profile);
  Json trapping = Json::array();
  CommandResult res;
  std::string csv = "r_photon,fermat_residual,impact_parameter,trap_verdict,max_radial_deviation\n";
  std::ostringstream summary;
  summary.setf(std::ios::fixed);
  summary.precision(10);
  const auto reports = parallel_indexed(roots.size(), [&](std::size_t i) {
    TrappingOptions to;
    to.window = window;
    to.trap_tol = trap_tol;
    to.tol = cm.tol;
    return trapping_test(cm.profile, roots[i], to);
  });
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const double r = roots[i];
    const TrappingReport& t = reports[i];
    const double resid = fermat_geodesy_residual(cm.profile, r);
    const double b = impact_parameter(cm.profile, r);
    trapping.push_back(Json{{"r0", r},
                            {"fermat_residual", resid},
                            {"impact_parameter", b},
                            {"verdict", to_string(t.verdict)},
                            {"max_radial_deviation", t.max_radial_deviation},
                            {"window", t.window},
                            {"trap_tol", t.trap_tol}});
    csv += csv_join({fmt(r), fmt(resid), fmt(b), to_string(t.verdict), fmt(t.max_radial_deviation)});
    summary << r << "\n";
    if (trajectories) {
      IntegrationOptions io;
      io.lambda_max = t.window;
      io.tol = cm.tol;
      res.artifacts.emplace_back("trajectory_" + std::to_string(i + 1) + ".csv",
                                 trajectory_csv(integrate_null_geodesic(cm.profile, tangent_launch(cm.profile, r), io)));
    }
  }
  if (roots.empty()) summary << "no photon sphere\n";

  res.exit_code = exit_ok;
  Json rep{{"command", "photon-search"}, {"config", cm.rd.resolved()}, {"profile", cm.profile.describe()},
           {"radii", roots},             {"trapping", trapping},         {"exit_code", res.exit_code}};
  res.json = rep.dump(2) + "\n";
  res.csv = std::move(csv);
  res.summary = summary.str();
  return res;
}

// ------------------------------------------------------------------ audit

Json audit_bundle(const RadialProfile& profile, const IdentityReport& a) {
  Json j = identity_json(a);
  const ComponentMass cmass = component_mass(profile, a.r0);
  j["component_mass"] = {{"analytic", cmass.analytic}, {"quadrature", cmass.quadrature}, {"panels", cmass.panels}};
  j["positivity"] = positivity_check(profile, a.r0);
  return j;
}

CommandResult cmd_audit(Json doc) {
  Common cm(std::move(doc), {}, 1e-10);
  std::vector<double> radii = cm.rd.numbers("radii", {});
  if (radii.empty()) radii = photon_sphere_search(cm.profile);
  cm.rd.record("radii", radii);
  const int mono_n = cm.rd.integer("monotonicity_samples", 256);
  cm.rd.reject_unknown();

  const std::vector<IdentityReport> audits = audit_spheres(cm.profile, radii, cm.tol);
  Json per = Json::array();
  std::string csv = audit_csv_header();
  bool all_ok = true;
  std::ostringstream summary;
  summary.precision(10);
  for (const auto& a : audits) {
    per.push_back(audit_bundle(cm.profile, a));
    csv += audit_csv_row(a);
    all_ok = all_ok && a.photon_sphere;
    summary << "r0 = " << a.r0 << ": " << (a.photon_sphere ? "photon sphere" : "not a photon sphere")
            << ", worst " << a.worst_residual << " = " << std::setprecision(6) << a.worst_value
            << ", mass_i = " << std::setprecision(12) << a.mass_i << "\n"
            << std::setprecision(10);
  }
  if (audits.empty()) summary << "no radii to audit\n";

  CommandResult res;
  Json mono = nullptr;
  if (!audits.empty()) {
    const Interval d = cm.profile.domain();
    const MonotonicityReport m = monotonicity_scan(cm.profile, audits.front().r0, d.hi, mono_n);
    std::string series = "t,r,H_over_N\n";
    for (const auto& s : m.samples) series += csv_join({fmt(s.t), fmt(s.r), fmt(s.H_over_N)});
    res.artifacts.emplace_back("monotonicity.csv", std::move(series));
    mono = Json{{"r_start", audits.front().r0}, {"r_end", d.hi}, {"samples", mono_n},
                {"violations", m.violations}, {"max_violation", m.max_violation}};
  }
  res.exit_code = all_ok ? exit_ok : exit_verification_failure;
  Json rep{{"command", "audit"}, {"config", cm.rd.resolved()}, {"profile", cm.profile.describe()},
           {"audits", per},      {"monotonicity", mono},         {"exit_code", res.exit_code}};
  res.json = rep.dump(2) + "\n";
  res.csv = std::move(csv);
  res.summary = summary.str();
  return res;
}

// ------------------------------------------------------------------- glue

MetricDefaults exterior_defaults() { return {3.0, 100.0}; }

CommandResult cmd_glue(Json doc) {
  Common cm(std::move(doc), exterior_defaults(), 1e-8);
  const double r0 = cm.rd.number("r0", cm.profile.domain().lo);
  cm.rd.reject_unknown();

  GlueOptions go;
  go.audit_tol = cm.tol;
  const PiecewiseManifold glued = glue_neck(cm.profile, r0, go);
  const PiecewiseManifold doubled = double_manifold(glued);
  std::vector<MatchReport> matches;
  Json mj = Json::array();
  double worst = 0.0;
  for (const auto& g : doubled.gluings) {
    matches.push_back(match_report(doubled, g.id));
    mj.push_back(match_json(matches.back()));
    worst = std::max(worst, matches.back().max_jump());
  }
  const bool pass = worst <= cm.tol;

  CommandResult res;
  res.exit_code = pass ? exit_ok : exit_verification_failure;
  Json rep{{"command", "glue"},
           {"config", cm.rd.resolved()},
           {"profile", cm.profile.describe()},
           {"glued", manifold_json(glued)},
           {"doubled", manifold_json(doubled)},
           {"matches", mj},
           {"max_jump", worst},
           {"match_tol", cm.tol},
           {"pass", pass},
           {"exit_code", res.exit_code}};
  res.json = rep.dump(2) + "\n";
  res.csv = match_csv(matches);
  std::ostringstream s;
  s.precision(6);
  s << (pass ? "PASS" : "FAIL") << ": glued neck mu = " << std::setprecision(12) << glued.mu << " at r0 = " << r0
    << "; " << doubled.charts.size() << " charts, " << doubled.gluings.size() << " gluings, " << doubled.ends.size()
    << " ends; max jump " << std::setprecision(3) << worst << "\n";
  res.summary = s.str();
  return res;
}

// --------------------------------------------------------------- pipeline

Json adm_json(const AdmEstimate& a) {
  return Json{{"mass", a.mass}, {"error_bar", a.error_bar}, {"radii", a.radii}, {"integrand", a.integrand}};
}

CommandResult cmd_pipeline(Json doc) {
  Common cm(std::move(doc), exterior_defaults(), 1e-8);
  PipelineOptions po;
  po.samples = cm.samples;
  po.match_tol = cm.rd.number("match_tol", cm.tol);
  if (cm.rd.has("r0")) po.r0 = cm.rd.number("r0", 0.0);
  po.flat_tol = cm.rd.number("flat_tol", po.flat_tol);
  po.mass_tol = cm.rd.number("mass_tol", po.mass_tol);
  po.scalar_tol = cm.rd.number("scalar_tol", po.scalar_tol);
  po.psi_samples = cm.rd.integer("psi_samples", po.psi_samples);
  po.guard = cm.rd.number("guard", po.guard);
  po.adm_schedule = cm.rd.numbers("adm_schedule", po.adm_schedule);
  po.R_schedule = cm.rd.numbers("R_schedule", po.R_schedule);
  po.relaxed_gates = cm.rd.boolean("relaxed_gates", false);
  po.corruption.u_offset = cm.rd.number("u_offset", 0.0);
  po.corruption.u_quadratic = cm.rd.number("u_quadratic", 0.0);
  cm.rd.reject_unknown();
  for (double t : {po.match_tol, po.flat_tol, po.mass_tol, po.scalar_tol, po.guard}) {
    if (!(t > 0.0)) throw Error(ErrorCode::config, "tolerances must be positive", t);
  }
  auto monotone = [](const std::vector<double>& xs, const char* name, bool increasing) {
    if (xs.size() < 2) throw Error(ErrorCode::config, std::string(name) + " needs at least two entries");
    for (std::size_t k = 0; k < xs.size(); ++k) {
      if (!(xs[k] > 0.0)) throw Error(ErrorCode::config, std::string(name) + " entries must be positive", xs[k]);
      if (k > 0 && !(increasing ? xs[k] > xs[k - 1] : xs[k] < xs[k - 1])) {
        throw Error(ErrorCode::config, std::string(name) + (increasing ? " must increase" : " must decrease"), xs[k]);
      }
    }
  };
  monotone(po.adm_schedule, "adm_schedule", true);
  monotone(po.R_schedule, "R_schedule", false);

  const PipelineReport rep = run_pipeline(cm.profile, po);

  Json matches = Json::array();
  for (const auto& m : rep.matches) matches.push_back(match_json(m));
  Json comp{{"end", rep.compactification.end_id},
            {"R", rep.compactification.R},
            {"f_T", rep.compactification.f_T},
            {"f_R", rep.compactification.f_R},
            {"error", rep.compactification.error},
            {"rates", rep.compactification.rates},
            {"limit", rep.compactification.limit},
            {"reference", rep.compactification.reference},
            {"ok", rep.compactification.ok},
            {"flag", rep.compactification.flag}};
  if (std::isfinite(rep.compactification.m_hat)) {
    comp["m_hat"] = rep.compactification.m_hat;
  } else {
    comp["m_hat"] = nullptr;
  }
  Json recon = nullptr;
  if (rep.reconstruction) {
    recon = Json{{"mass", rep.reconstruction->mass},
                 {"r_photon", rep.reconstruction->r_photon},
                 {"spacetime_H", rep.reconstruction->spacetime_H},
                 {"audit_discrepancy", rep.reconstruction->audit_discrepancy}};
  }
  Json bound{{"ok", rep.psi_bound.ok},
             {"max_abs_psi", rep.psi_bound.max_abs_psi},
             {"argmax", point_json(rep.psi_bound.argmax)},
             {"boundary_lapse", rep.psi_bound.boundary_lapse},
             {"samples", rep.psi_bound.samples}};

  CommandResult res;
  res.exit_code = rep.verdict == Verdict::schwarzschild_rigid ? exit_ok : exit_verification_failure;
  Json out{{"command", "pipeline"},
           {"config", cm.rd.resolved()},
           {"profile", cm.profile.describe()},
           {"r0", rep.r0},
           {"audit", identity_json(rep.audit)},
           {"mass_i", rep.mass_i},
           {"mu", rep.mu},
           {"matches", matches},
           {"max_match_jump", rep.max_match_jump},
           {"psi_bound", bound},
           {"psi_harmonicity", rep.harmonicity},
           {"conformal_scalar", {{"max_abs", rep.scalar.max_abs}, {"argmax", point_json(rep.scalar.argmax)},
                                 {"samples", rep.scalar.samples.size()}, {"ok", rep.scalar_ok()}}},
           {"adm_exterior", adm_json(rep.adm_exterior)},
           {"adm_conformal_end", adm_json(rep.adm_conformal)},
           {"masses_ok", rep.masses_ok()},
           {"compactification", comp},
           {"flatness", {{"max_curvature", rep.flatness.max_curvature}, {"argmax", point_json(rep.flatness.argmax)}}},
           {"verdict", to_string(rep.verdict)},
           {"reconstruction", recon},
           {"notes", rep.notes},
           {"exit_code", res.exit_code}};
  res.json = out.dump(2) + "\n";

  std::string csv = "chart,r,u,scalar_hat,max_curvature_hat\n";
  for (std::size_t i = 0; i < rep.scalar.samples.size(); ++i) {
    const auto& s = rep.scalar.samples[i];
    csv += csv_join({s.at.chart, fmt(s.at.r), fmt(s.u), fmt(s.value), fmt(rep.flatness.samples[i].value)});
  }
  res.csv = std::move(csv);

  std::ostringstream s;
  s.precision(3);
  s << "verdict " << to_string(rep.verdict) << "; max jump " << rep.max_match_jump << ", max|R_hat| "
    << rep.scalar.max_abs << ", flatness " << rep.flatness.max_curvature << ", ADM " << std::setprecision(6)
    << rep.adm_exterior.mass << " / " << std::setprecision(3) << rep.adm_conformal.mass << "\n";
  if (rep.reconstruction) {
    s.precision(10);
    s << "reconstructed m = " << rep.reconstruction->mass << ", r_photon = " << rep.reconstruction->r_photon
      << ", spacetime H = " << rep.reconstruction->spacetime_H << "\n";
  }
  res.summary = s.str();
  return res;
}

// ------------------------------------------------------------------- star

CommandResult cmd_star(Json doc) {
  Json metric = doc.value("metric", Json::object());
  if (metric.is_object() && !metric.contains("kind")) metric["kind"] = "star";
  // Star shorthand at top level.
  for (const char* key : {"r_body"}) {
    if (doc.contains(key)) {
      metric[key] = doc[key];
      doc.erase(key);
    }
  }
  doc["metric"] = metric;
  if (metric.value("kind", "") != "star") throw Error(ErrorCode::config, "star command needs metric kind 'star'");
  Common cm(std::move(doc), {}, 1e-10);
  const int mono_n = cm.rd.integer("monotonicity_samples", 256);
  cm.rd.reject_unknown();

  const auto* pw = std::get_if<detail::PiecewiseModel>(&cm.profile.model().impl);
  const auto& fluid = std::get<detail::FluidModel>(pw->pieces.front().model().impl);
  const double m = fluid.m, rb = fluid.r_body, r_hi = cm.profile.domain().hi;
  const double ratio = 2.0 * m / rb;

  PhotonSearchOptions vac;
  vac.window = Interval{rb, r_hi};
  const std::vector<double> vacuum_roots = photon_sphere_search(cm.profile, vac);
  std::vector<double> interior_rings;
  for (double r : photon_sphere_search(cm.profile)) {
    if (r < rb) interior_rings.push_back(r);
  }

  const std::vector<IdentityReport> audits = audit_spheres(cm.profile, vacuum_roots, cm.tol);
  Json aj = Json::array();
  std::string csv = audit_csv_header();
  bool audits_ok = true;
  for (const auto& a : audits) {
    aj.push_back(audit_bundle(cm.profile, a));
    csv += audit_csv_row(a);
    audits_ok = audits_ok && a.photon_sphere;
  }

  const MonotonicityReport mono = monotonicity_scan(cm.profile, rb, r_hi, mono_n);
  std::ostringstream verdict;
  verdict.precision(10);
  bool hypothesis = false;
  if (vacuum_roots.empty()) {
    verdict << "hypothesis unmet: the body (R_b = " << rb << ") is not very compact; its boundary lies outside 3m = "
            << 3.0 * m << ", so no photon sphere exists in the vacuum region and the static n-body theorem says nothing";
  } else if (vacuum_roots.size() == 1 && audits_ok) {
    hypothesis = true;
    verdict << "very compact body surrounded by its own photon sphere at r = " << vacuum_roots.front()
            << "; by the static n-body theorem no second such body can coexist with it in a static configuration";
  } else {
    verdict << "vacuum region carries " << vacuum_roots.size()
            << " photon-sphere candidate(s) that do not all pass the audit";
  }

  CommandResult res;
  res.exit_code = (vacuum_roots.empty() || (vacuum_roots.size() == 1 && audits_ok)) ? exit_ok : exit_verification_failure;
  Json rep{{"command", "star"},
           {"config", cm.rd.resolved()},
           {"profile", cm.profile.describe()},
           {"mass", m},
           {"r_body", rb},
           {"buchdahl_ratio", ratio},
           {"buchdahl_limit", 8.0 / 9.0},
           {"photon_sphere_radii", vacuum_roots},
           {"interior_light_rings", interior_rings},
           {"audits", aj},
           {"monotonicity", {{"r_start", rb}, {"r_end", r_hi}, {"violations", mono.violations},
                             {"max_violation", mono.max_violation}}},
           {"theorem_hypothesis_met", hypothesis},
           {"verdict", verdict.str()},
           {"exit_code", res.exit_code}};
  res.json = rep.dump(2) + "\n";
  res.csv = std::move(csv);
  std::ostringstream s;
  s.precision(10);
  s << "Buchdahl ratio 2m/R_b = " << ratio << "\n";
  s << "photon spheres in vacuum region:";
  for (double r : vacuum_roots) s << " " << r;
  s << (vacuum_roots.empty() ? " none\n" : "\n") << verdict.str() << "\n";
  res.summary = s.str();
  return res;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::config:
    case ErrorCode::invalid_argument:
    case ErrorCode::domain_violation:
    case ErrorCode::one_sided_limit: return exit_config;
    case ErrorCode::buchdahl_violation: return exit_buchdahl;
    case ErrorCode::audit_refused:
    case ErrorCode::no_minimal_boundary: return exit_refused;
    case ErrorCode::io: return exit_io;
    default: return exit_verification_failure;
  }
}

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"verify", "photon-search", "audit", "glue", "pipeline", "star"};
  return names;
}

CommandResult run_command(const std::string& command, const std::string& config_text,
                          const std::string& overrides_text) {
  static const std::map<std::string, std::function<CommandResult(Json)>> table{
      {"verify", cmd_verify}, {"photon-search", cmd_photon_search}, {"audit", cmd_audit},
      {"glue", cmd_glue},     {"pipeline", cmd_pipeline},           {"star", cmd_star},
  };
  CommandResult res;
  try {
    const auto it = table.find(command);
    if (it == table.end()) throw Error(ErrorCode::config, "unknown command '" + command + "'");
    return it->second(merge_config(config_text, overrides_text));
  } catch (const Error& e) {
    res.exit_code = exit_code_for(e.code());
    Json rep{{"command", command}, {"error", to_string(e.code())}, {"message", e.what()}, {"exit_code", res.exit_code}};
    if (e.code() == ErrorCode::buchdahl_violation) rep["buchdahl_ratio"] = e.detail();
    if (e.code() == ErrorCode::audit_refused) rep["failing_value"] = e.detail();
    res.json = rep.dump(2) + "\n";
    res.summary = std::string("error (") + to_string(e.code()) + "): " + e.what() + "\n";
  } catch (const std::exception& e) {
    res.exit_code = exit_verification_failure;
    Json rep{{"command", command}, {"error", "internal"}, {"message", e.what()}, {"exit_code", res.exit_code}};
    res.json = rep.dump(2) + "\n";
    res.summary = std::string("error: ") + e.what() + "\n";
  }
  return res;
}

}  // namespace psu::scenario
