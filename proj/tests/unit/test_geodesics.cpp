#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "error.hpp"
#include "generators.hpp"
#include "geodesics.hpp"
#include "oracle_values.hpp"
#include "profile.hpp"

using namespace psu;

namespace {

const double sqrt3 = std::sqrt(3.0);

RadialProfile schw(double m) { return make_schwarzschild_exterior(m, 2.1 * m, 100.0 * m); }

}  // namespace

TEST_CASE("fermat profile") {
  const RadialProfile f = fermat_profile(schw(1.0));
  CHECK(f.jet(3.0).R.v == doctest::Approx(3.0 * sqrt3).epsilon(1e-15));
  CHECK(std::abs(f.jet(3.0).R.d) <= 1e-15);
  const RadialProfile flat = make_schwarzschild_family(0.0, 1.0, 10.0);
  const RadialProfile ff = fermat_profile(flat);
  for (double r : {1.5, 4.0, 9.0}) {
    CHECK(ff.jet(r).R.v == r);
    CHECK(ff.jet(r).A.v == 1.0);
  }
  CHECK_THROWS_AS(fermat_profile(make_schwarzschild_neck(1.0)), Error);
}

TEST_CASE("fermat residual against closed form 2 (r - 3m) / r^2") {
  const RadialProfile p = schw(1.0);
  CHECK(std::abs(fermat_geodesy_residual(p, 3.0)) <= 1e-12);
  CHECK(fermat_geodesy_residual(p, 4.0) == doctest::Approx(oracle::fermat_residual_r4).epsilon(1e-14));
  CHECK(fermat_geodesy_residual(p, 10.0) == doctest::Approx(oracle::fermat_residual_r10).epsilon(1e-14));
  CHECK(fermat_geodesy_residual(p, 2.5) < 0.0);
  gen::for_all(31, 200, [&](gen::Source& s, int) {
    const double r = s.uniform(2.2, 99.0);
    CHECK(fermat_geodesy_residual(p, r) == doctest::Approx(2.0 * (r - 3.0) / (r * r)).scale(1.0).epsilon(1e-13));
  });
}

TEST_CASE("fermat residual never vanishes for m = -1") {
  const RadialProfile p = make_schwarzschild_family(-1.0, 1e-3, 1e3);
  gen::for_all(32, 500, [&](gen::Source& s, int) { CHECK(fermat_geodesy_residual(p, s.log_uniform(1e-3, 1e3)) > 0.0); });
}

TEST_CASE("photon sphere search") {
  const auto r1 = photon_sphere_search(schw(1.0));
  REQUIRE(r1.size() == 1);
  CHECK(std::abs(r1[0] - 3.0) <= 1e-10);
  const auto r2 = photon_sphere_search(make_schwarzschild_exterior(2.0, 4.1, 100.0));
  REQUIRE(r2.size() == 1);
  CHECK(std::abs(r2[0] - 6.0) <= 1e-10);
  CHECK(photon_sphere_search(make_schwarzschild_family(0.0, 1.0, 100.0)).empty());
  CHECK(photon_sphere_search(make_schwarzschild_family(-1.0, 0.1, 100.0)).empty());
}

TEST_CASE("photon sphere search is scale covariant") {
  gen::for_all(33, 40, [](gen::Source& s, int i) {
    const double m = gen::mass(s);
    INFO("case " << i << ", m = " << m);
    const auto roots = photon_sphere_search(schw(m));
    REQUIRE(roots.size() == 1);
    CHECK(std::abs(roots[0] - 3.0 * m) <= 1e-10 * m);
  });
}

TEST_CASE("constant-density star has an inner light ring inside the fluid") {
  const RadialProfile star = make_star(1.0, 2.5, 100.0);
  const auto all = photon_sphere_search(star);
  REQUIRE(all.size() == 2);
  CHECK(all[0] == doctest::Approx(oracle::star_inner_light_ring).epsilon(1e-12));
  CHECK(std::abs(all[1] - 3.0) <= 1e-10);
  PhotonSearchOptions vac;
  vac.window = Interval{2.5, 100.0};
  const auto outer = photon_sphere_search(star, vac);
  REQUIRE(outer.size() == 1);
  CHECK(std::abs(outer[0] - 3.0) <= 1e-10);
}

TEST_CASE("impact parameter") {
  CHECK(impact_parameter(schw(1.0), 3.0) == doctest::Approx(3.0 * sqrt3).epsilon(1e-15));
  CHECK(impact_parameter(make_schwarzschild_family(0.0, 1.0, 10.0), 7.0) == 7.0);
  // Stationary at the photon sphere.
  const RadialProfile p = schw(1.0);
  const double h = 1e-5;
  const double slope = (impact_parameter(p, 3.0 + h) - impact_parameter(p, 3.0 - h)) / (2 * h);
  CHECK(std::abs(slope) <= 1e-9);
  CHECK(impact_parameter(p, 3.1) > impact_parameter(p, 3.0));
  CHECK(impact_parameter(p, 2.9) > impact_parameter(p, 3.0));
}

TEST_CASE("tangent launch is null") {
  const NullGeodesicState s = tangent_launch(schw(1.0), 3.0);
  CHECK(s.p_r == 0.0);
  CHECK(s.E == 1.0);
  CHECK(s.L == doctest::Approx(3.0 * sqrt3).epsilon(1e-15));
  NullGeodesicState bad = s;
  bad.L *= 1.01;
  CHECK_THROWS_AS(integrate_null_geodesic(schw(1.0), bad), Error);
}

TEST_CASE("circular photon orbit stays put over the affine window") {
  const TrappingReport t = trapping_test(schw(1.0), 3.0);
  CHECK(t.verdict == TrapVerdict::trapped);
  CHECK(t.max_radial_deviation <= 1e-3);
  CHECK(t.window == 50.0);
}

TEST_CASE("off the photon sphere the orbit is not trapped") {
  const TrappingReport t = trapping_test(schw(1.0), 4.0);
  CHECK(t.verdict != TrapVerdict::trapped);
  CHECK(t.max_radial_deviation > 0.1);
  const TrappingReport in = trapping_test(schw(1.0), 2.9);
  CHECK(in.verdict == TrapVerdict::fell_in);
}

TEST_CASE("flat space: straight lines escape monotonically") {
  const RadialProfile flat = make_schwarzschild_family(0.0, 1.0, 1000.0);
  const Trajectory t = integrate_null_geodesic(flat, tangent_launch(flat, 5.0), {.lambda_max = 100.0});
  for (std::size_t k = 1; k < t.points.size(); ++k) CHECK(t.points[k].r > t.points[k - 1].r);
  // r(lambda) = sqrt(r0^2 + lambda^2) for E = 1.
  const auto& last = t.points.back();
  CHECK(last.r == doctest::Approx(std::hypot(5.0, last.lambda)).epsilon(1e-12));
  CHECK(trapping_test(flat, 5.0).verdict == TrapVerdict::escaped);
}

TEST_CASE("trapping and the fermat criterion agree") {
  struct Probe {
    std::string name;
    RadialProfile profile;
    std::vector<double> radii;
  };
  const std::vector<Probe> family{
      {"m=0.5", schw(0.5), {1.2, 1.45, 1.5, 1.55, 2.0, 5.0}},
      {"m=1", schw(1.0), {2.5, 2.95, 3.0, 3.05, 4.0, 20.0}},
      {"m=2", schw(2.0), {5.0, 5.9, 6.0, 6.1, 8.0}},
      {"m=0", make_schwarzschild_family(0.0, 1.0, 1000.0), {2.0, 3.0, 10.0}},
      {"m=-1", make_schwarzschild_family(-1.0, 1.0, 1000.0), {2.0, 3.0, 10.0}},
      {"star", make_star(1.0, 2.5, 200.0), {1.5, oracle::star_inner_light_ring, 2.2, 2.9, 3.0, 3.1}},
  };
  for (const Probe& p : family) {
    const auto roots = photon_sphere_search(p.profile);
    for (double r : p.radii) {
      bool is_root = false;
      for (double x : roots) is_root = is_root || std::abs(x - r) <= 1e-9 * std::max(1.0, r);
      INFO(p.name << " at r0 = " << r);
      CHECK((trapping_test(p.profile, r).verdict == TrapVerdict::trapped) == is_root);
    }
  }
}

TEST_CASE("conserved quantities and the null constraint") {
  IntegrationOptions io;
  io.lambda_max = 100.0;
  io.tol = 1e-12;
  gen::for_all(34, 8, [&](gen::Source& s, int i) {
    const double m = gen::mass(s);
    const RadialProfile p = make_schwarzschild_exterior(m, 2.1 * m, 1000.0 * m);
    const double r0 = s.uniform(3.2 * m, 10.0 * m);
    INFO("case " << i << ", m = " << m << ", r0 = " << r0);
    io.lambda_max = 100.0 * m;
    const Trajectory t = integrate_null_geodesic(p, tangent_launch(p, r0, s.uniform(0.5, 2.0)), io);
    CHECK(t.E_drift <= 1e-10);
    CHECK(t.L_drift <= 1e-10);
    CHECK(t.max_constraint <= 1e-10);
    for (const auto& pt : t.points) CHECK(std::abs(pt.constraint) <= 1e-10);
  });
}

TEST_CASE("trajectory CSV format") {
  const RadialProfile p = schw(1.0);
  const Trajectory t = integrate_null_geodesic(p, tangent_launch(p, 3.0), {.lambda_max = 1.0});
  const std::string csv = trajectory_csv(t);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "lambda,r,phi,p_r,constraint");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 4);
  }
  CHECK(rows == static_cast<int>(t.points.size()));
  CHECK(t.points.front().r == 3.0);
}

TEST_CASE("domain exit terminates the integration") {
  const RadialProfile p = make_schwarzschild_exterior(1.0, 2.1, 20.0);
  const Trajectory t = integrate_null_geodesic(p, tangent_launch(p, 5.0), {.lambda_max = 500.0});
  CHECK(t.reason == Termination::domain_exit);
  CHECK(t.points.back().r <= 20.0 + 2e-8);
  CHECK(t.points.back().r >= 20.0 - 2e-8);
}
