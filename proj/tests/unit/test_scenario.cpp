#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "commands.hpp"
#include "config.hpp"
#include "generators.hpp"
#include "parallel.hpp"

using namespace psu::scenario;

namespace {

CommandResult run(const std::string& cmd, const Json& config, const Json& overrides = Json::object()) {
  return run_command(cmd, config.dump(), overrides.dump());
}

Json report(const CommandResult& r) { return Json::parse(r.json); }

Json noisy_tabulated(double amplitude) {
  gen::Source s(61);
  Json r = Json::array(), N = Json::array(), A = Json::array(), R = Json::array();
  for (int k = 0; k < 400; ++k) {
    const double x = 3.0 + 0.1 * k;
    const double n = std::sqrt(1.0 - 2.0 / x);
    r.push_back(x);
    N.push_back(n * (1.0 + amplitude * s.uniform(-1.0, 1.0)));
    A.push_back(1.0 / n);
    R.push_back(x);
  }
  return Json{{"kind", "tabulated"}, {"r", r}, {"N", N}, {"A", A}, {"Rareal", R}};
}

}  // namespace

TEST_CASE("config merging: flags override file values") {
  const Json doc = merge_config(R"({"metric":"schwarzschild","samples":64,"tol":1e-9})",
                                R"({"metric":{"mass":2},"samples":128})");
  CHECK(doc["metric"]["kind"] == "schwarzschild");
  CHECK(doc["metric"]["mass"] == 2);
  CHECK(doc["samples"] == 128);
  CHECK(doc["tol"] == 1e-9);
  // Changing kind drops the old kind's parameters.
  const Json swapped = merge_config(R"({"metric":{"kind":"neck","mu":1}})", R"({"metric":{"kind":"schwarzschild"}})");
  CHECK_FALSE(swapped["metric"].contains("mu"));
}

TEST_CASE("config errors map to exit 64") {
  CHECK(run_command("verify", "{not json", "").exit_code == exit_config);
  CHECK(run("verify", {{"metric", {{"kind", "schwarzschild"}, {"r_lo", 5.0}, {"r_hi", 4.0}}}}).exit_code == exit_config);
  CHECK(run("verify", {{"metric", "schwarzschild"}, {"samplez", 3}}).exit_code == exit_config);
  CHECK(run("verify", {{"metric", {{"kind", "schwarzschild"}, {"masss", 1}}}}).exit_code == exit_config);
  CHECK(run("verify", {{"metric", "schwarzschild"}, {"tol", -1.0}}).exit_code == exit_config);
  CHECK(run("verify", {{"metric", "schwarzschild"}, {"samples", 0}}).exit_code == exit_config);
  CHECK(run("verify", {{"metric", "wormhole"}}).exit_code == exit_config);
  CHECK(run("verify", {{"samples", "many"}}).exit_code == exit_config);
  CHECK(run("pipeline", {{"adm_schedule", {100, 50}}}).exit_code == exit_config);
  CHECK(run("pipeline", {{"R_schedule", {1e-4, 1e-3}}}).exit_code == exit_config);
  CHECK(run("frobnicate", Json::object()).exit_code == exit_config);
  const Json err = report(run("verify", {{"metric", "wormhole"}}));
  CHECK(err["error"] == "config");
}

TEST_CASE("missing metric file is an I/O error") {
  const CommandResult r = run("verify", {{"metric", {{"kind", "tabulated"}, {"file", "/nonexistent/profile.json"}}}});
  CHECK(r.exit_code == exit_io);
}

TEST_CASE("verify") {
  SUBCASE("schwarzschild m = 1 passes") {
    const CommandResult r = run("verify", {{"metric", {{"kind", "schwarzschild"}, {"mass", 1.0}}}, {"samples", 512}});
    CHECK(r.exit_code == exit_ok);
    const Json j = report(r);
    CHECK(j["max_residual"].get<double>() <= 1e-12);
    CHECK(j["config"]["samples"] == 512);
    CHECK(j["config"]["metric"]["r_lo"] == 2.1);
    CHECK(j["config"]["tol"] == 1e-10);
    // Header plus one row per sample.
    CHECK(std::count(r.csv.begin(), r.csv.end(), '\n') == 513);
    REQUIRE(r.artifacts.size() == 1);
    CHECK(r.artifacts[0].first == "profile.json");
  }
  SUBCASE("noisy tabulated data fails and names the worst sample") {
    const CommandResult r = run("verify", {{"metric", noisy_tabulated(1e-6)}});
    CHECK(r.exit_code == exit_verification_failure);
    const Json j = report(r);
    CHECK(j["worst_sample"]["r"].get<double>() > 3.0);
    CHECK_FALSE(j["worst_sample"]["field"].get<std::string>().empty());
    CHECK(r.summary.find("FAIL") == 0);
    CHECK(j["config"]["metric"]["nodes"] == 400);
  }
  SUBCASE("fluid interior is checked against its sourced equations") {
    CHECK(run("verify", {{"metric", {{"kind", "interior_fluid"}, {"mass", 1.0}, {"r_body", 2.5}}}}).exit_code ==
          exit_ok);
  }
  SUBCASE("profile file round trip") {
    const CommandResult a = run("verify", {{"metric", {{"kind", "neck"}, {"mu", 1.5}}}});
    const Json exported = Json::parse(a.artifacts[0].second);
    CHECK(exported["kind"] == "neck");
    CHECK(exported["mu"] == 1.5);
    const CommandResult b = run("verify", {{"metric", exported}});
    CHECK(b.json == a.json);
  }
}

TEST_CASE("photon-search") {
  const CommandResult r1 = run("photon-search", {{"metric", {{"kind", "schwarzschild"}, {"mass", 1.0}}}});
  CHECK(r1.exit_code == exit_ok);
  CHECK(r1.summary == "3.0000000000\n");
  const Json j = report(r1);
  CHECK(j["trapping"][0]["verdict"] == "trapped");
  for (double m : {0.0, -1.0}) {
    const CommandResult r = run("photon-search", {{"metric", {{"kind", "schwarzschild"}, {"mass", m}}}});
    CHECK(r.exit_code == exit_ok);
    CHECK(report(r)["radii"].empty());
  }
  const CommandResult t = run("photon-search", {{"metric", "schwarzschild"}, {"trajectory", true}});
  REQUIRE(t.artifacts.size() == 1);
  CHECK(t.artifacts[0].second.rfind("lambda,r,phi,p_r,constraint\n", 0) == 0);
}

TEST_CASE("audit") {
  const CommandResult ok = run("audit", {{"metric", "schwarzschild"}});
  CHECK(ok.exit_code == exit_ok);
  const Json j = report(ok);
  CHECK(j["audits"][0]["photon_sphere"] == true);
  CHECK(j["audits"][0]["component_mass"]["quadrature"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(j["monotonicity"]["violations"] == 0);
  CHECK(ok.artifacts.at(0).first == "monotonicity.csv");

  const CommandResult bad = run("audit", {{"metric", "schwarzschild"}, {"radii", {3.0, 2.9}}});
  CHECK(bad.exit_code == exit_verification_failure);
  CHECK(report(bad)["audits"][1]["worst_residual"] == "res_rH");
}

TEST_CASE("glue") {
  const CommandResult r = run("glue", {{"metric", "schwarzschild"}});
  CHECK(r.exit_code == exit_ok);
  const Json j = report(r);
  CHECK(j["doubled"]["charts"].size() == 4);
  CHECK(j["doubled"]["gluings"].size() == 3);
  CHECK(j["doubled"]["ends"].size() == 2);
  CHECK(j["max_jump"].get<double>() <= 1e-12);
  CHECK(run("glue", {{"metric", "schwarzschild"}, {"r0", 3.5}}).exit_code == exit_refused);
}

TEST_CASE("pipeline") {
  SUBCASE("m = 1 is rigid") {
    const CommandResult r = run("pipeline", {{"metric", "schwarzschild"}});
    CHECK(r.exit_code == exit_ok);
    const Json j = report(r);
    CHECK(j["verdict"] == "schwarzschild_rigid");
    CHECK(j["reconstruction"]["mass"].get<double>() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(j["reconstruction"]["r_photon"].get<double>() == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(j["reconstruction"]["spacetime_H"].get<double>() == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-12));
    CHECK(r.csv.rfind("chart,r,u,scalar_hat,max_curvature_hat\n", 0) == 0);
    CHECK(j["config"]["adm_schedule"].size() == 4);
  }
  SUBCASE("m = 2 is rigid with mass 2") {
    const Json j = report(run("pipeline", {{"metric", {{"kind", "schwarzschild"}, {"mass", 2.0}}}}));
    CHECK(j["verdict"] == "schwarzschild_rigid");
    CHECK(j["reconstruction"]["mass"].get<double>() == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("boundary at 2.9m is refused with res_rH named") {
    const CommandResult r = run("pipeline", {{"metric", {{"kind", "schwarzschild"}, {"r_lo", 2.9}}}});
    CHECK(r.exit_code == exit_refused);
    CHECK(r.summary.find("res_rH") != std::string::npos);
  }
  SUBCASE("corrupted conformal factor fails verification") {
    const CommandResult r = run("pipeline", {{"metric", "schwarzschild"}, {"u_quadratic", 0.01}});
    CHECK(r.exit_code == exit_verification_failure);
    CHECK(report(r)["verdict"] == "not_rigid");
  }
}

TEST_CASE("star") {
  SUBCASE("very compact body") {
    const CommandResult r = run("star", {{"metric", {{"kind", "star"}, {"mass", 1.0}, {"r_body", 2.5}}}});
    CHECK(r.exit_code == exit_ok);
    const Json j = report(r);
    CHECK(j["buchdahl_ratio"].get<double>() == doctest::Approx(0.8).epsilon(1e-15));
    REQUIRE(j["photon_sphere_radii"].size() == 1);
    CHECK(std::abs(j["photon_sphere_radii"][0].get<double>() - 3.0) <= 1e-10);
    CHECK(j["audits"][0]["photon_sphere"] == true);
    CHECK(j["interior_light_rings"].size() == 1);
    CHECK(j["theorem_hypothesis_met"] == true);
    CHECK(j["verdict"].get<std::string>().find("n-body") != std::string::npos);
  }
  SUBCASE("Buchdahl violation") {
    const CommandResult r = run("star", {{"metric", {{"kind", "star"}, {"mass", 1.0}, {"r_body", 2.2}}}});
    CHECK(r.exit_code == exit_buchdahl);
    CHECK(report(r)["buchdahl_ratio"].get<double>() == doctest::Approx(0.909090909).epsilon(1e-9));
  }
  SUBCASE("body not very compact") {
    const CommandResult r = run("star", Json{{"r_body", 3.5}});
    CHECK(r.exit_code == exit_ok);
    const Json j = report(r);
    CHECK(j["photon_sphere_radii"].empty());
    CHECK(j["theorem_hypothesis_met"] == false);
    CHECK(j["verdict"].get<std::string>().find("hypothesis unmet") == 0);
  }
  CHECK(run("star", {{"metric", "schwarzschild"}}).exit_code == exit_config);
}

TEST_CASE("reports are identical across runs and thread counts") {
  const std::vector<std::pair<std::string, Json>> runs{
      {"verify", {{"metric", "schwarzschild"}}},
      {"photon-search", {{"metric", "schwarzschild"}, {"trajectory", true}}},
      {"audit", {{"metric", "schwarzschild"}}},
      {"pipeline", {{"metric", "schwarzschild"}}},
      {"star", Json::object()},
  };
  for (const auto& [cmd, cfg] : runs) {
    INFO(cmd);
    psu::set_thread_count(1);
    const CommandResult a = run(cmd, cfg);
    psu::set_thread_count(4);
    const CommandResult b = run(cmd, cfg);
    const CommandResult c = run(cmd, cfg, {{"threads", 3}});
    CHECK(a.json == b.json);
    CHECK(a.json == c.json);
    CHECK(a.csv == b.csv);
    CHECK(a.artifacts == b.artifacts);
  }
  psu::set_thread_count(0);
}
