#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "curvature.hpp"
#include "error.hpp"
#include "fd_oracle.hpp"
#include "generators.hpp"
#include "oracle_values.hpp"
#include "profile.hpp"

using namespace psu;

namespace {

constexpr double pi = std::numbers::pi;

struct Case {
  std::string name;
  RadialProfile profile;
  double lo, hi;  // sampling window
  std::vector<double> avoid;  // points the stencil must not straddle
};

RadialProfile tabulated_schwarzschild(double m, double lo, double hi, int n) {
  std::vector<double> r, N, A, R;
  for (int k = 0; k < n; ++k) {
    const double x = lo + (hi - lo) * k / (n - 1);
    r.push_back(x);
    N.push_back(std::sqrt(1.0 - 2.0 * m / x));
    A.push_back(1.0 / N.back());
    R.push_back(x);
  }
  return make_tabulated(r, N, A, R);
}

std::vector<Case> profile_family() {
  const RadialProfile ext = make_schwarzschild_exterior(1.0, 2.5, 40.0);
  const RadialProfile tab = tabulated_schwarzschild(1.0, 3.0, 20.0, 69);
  return {
      {"schwarzschild m=1", ext, 2.6, 39.0, {}},
      {"schwarzschild m=-1", make_schwarzschild_family(-1.0, 1.0, 40.0), 1.1, 39.0, {}},
      {"schwarzschild m=0", make_schwarzschild_family(0.0, 1.0, 40.0), 1.1, 39.0, {}},
      {"neck mu=1", make_schwarzschild_neck(1.0), 2.05, 2.98, {}},
      {"interior fluid", make_interior_fluid(1.0, 2.5), 0.1, 2.45, {}},
      {"star", make_star(1.0, 2.5, 40.0), 0.1, 39.0, {2.5}},
      {"tabulated", tab, 3.1, 19.9, tab.nodes()},
      {"fermat", make_fermat(ext), 2.6, 39.0, {}},
      {"collar conformal", make_collar_conformal(ext, 1, 1.0), 2.6, 39.0, {}},
  };
}

std::array<double, 6> fields(const CurvatureSample& c) {
  return {c.ric_nn, c.ric_tt, c.scalar, c.hess_nn, c.hess_tt, c.lap_N};
}

bool straddles(const Case& c, double r, double reach) {
  return std::any_of(c.avoid.begin(), c.avoid.end(), [&](double b) { return std::abs(r - b) <= reach; });
}

}  // namespace

TEST_CASE("closed form matches the finite-difference oracle at quadratic order on every profile kind") {
  for (const Case& c : profile_family()) {
    INFO(c.name);
    int checked = 0;
    for (int k = 0; k < 64; ++k) {
      const double r = c.lo + (c.hi - c.lo) * (k + 0.5) / 64.0;
      const double h = 2e-3 * std::min(1.0, r);
      if (straddles(c, r, 2.5 * h)) continue;
      const auto exact = fields(curvature_at(c.profile, r));
      const auto coarse = fields(fd_curvature_oracle(c.profile, r, h));
      const auto fine = fields(fd_curvature_oracle(c.profile, r, 0.5 * h));
      for (std::size_t f = 0; f < 6; ++f) {
        // Richardson estimate of C h^2 from the two steps.
        const double predicted = 4.0 / 3.0 * std::abs(coarse[f] - fine[f]);
        const double err = std::abs(exact[f] - coarse[f]);
        INFO("r = " << r << ", field " << f << ", err " << err << ", C h^2 " << predicted);
        CHECK(err <= 1.5 * predicted + 1e-13 * (1.0 + std::abs(exact[f])));
      }
      ++checked;
    }
    CHECK(checked >= 32);
  }
}

TEST_CASE("oracle convergence rate is quadratic") {
  const RadialProfile p = make_schwarzschild_exterior(1.0, 2.1, 100.0);
  const std::vector<double> steps{1e-2, 1e-3, 1e-4};
  const ConvergenceStudy study = fd_convergence(p, 5.0, steps);
  REQUIRE(study.rates.size() == 2);
  for (double rate : study.rates) CHECK(rate == doctest::Approx(2.0).epsilon(0.1));
  CHECK(study.constant > 0.0);
  // At h = 1e-3 the error is within C h^2 of the measured constant.
  CHECK(study.errors[1] <= 1.5 * study.constant * 1e-6);
}

TEST_CASE("oracle on flat space vanishes") {
  const RadialProfile flat = make_schwarzschild_family(0.0, 1.0, 10.0);
  for (double v : fields(fd_curvature_oracle(flat, 5.0, 1e-3))) CHECK(std::abs(v) <= 1e-9);
  for (double v : fields(curvature_at(flat, 5.0))) CHECK(v == 0.0);
}

TEST_CASE("oracle preconditions") {
  const RadialProfile p = make_schwarzschild_exterior(1.0, 2.5, 10.0);
  CHECK_THROWS_AS(fd_curvature_oracle(p, 2.51, 0.01), Error);
  CHECK_THROWS_AS(fd_curvature_oracle(p, 5.0, 0.0), Error);
  const RadialProfile neck = make_schwarzschild_neck(1.0);
  CHECK_THROWS_AS(fd_curvature_oracle(neck, 2.02, 0.01), Error);
}

TEST_CASE("static vacuum residuals vanish on the schwarzschild family") {
  for (double m : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
    const double lo = m > 0.0 ? 2.1 * m : 1.0;
    const double hi = m > 0.0 ? 100.0 * m : 100.0;
    const RadialProfile p = make_schwarzschild_family(m, lo, hi);
    double worst = 0.0;
    for (int k = 0; k < 512; ++k) {
      const double r = lo + (hi - lo) * (k + 0.5) / 512.0;
      worst = std::max(worst, curvature_at(p, r).max_vacuum_residual());
    }
    INFO("m = " << m);
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("schwarzschild at r = 3 is vacuum") {
  const CurvatureSample c = curvature_at(make_schwarzschild_exterior(1.0, 2.1, 100.0), 3.0);
  CHECK(std::abs(c.scalar_residual) <= 1e-12);
  CHECK(std::abs(c.lap_residual) <= 1e-12);
  CHECK(std::abs(c.vac_residual_nn) <= 1e-12);
  CHECK(std::abs(c.vac_residual_tt) <= 1e-12);
}

TEST_CASE("scalar curvature is the trace of Ricci") {
  gen::for_all(21, 300, [](gen::Source& s, int i) {
    const auto cases = profile_family();
    const Case& c = s.pick(cases);
    const double r = gen::radius(s, c.lo, c.hi);
    INFO("case " << i << ": " << c.name << " at r = " << r);
    const CurvatureSample k = curvature_at(c.profile, r);
    const double trace = k.ric_nn + 2.0 * k.ric_tt;
    CHECK(std::abs(k.scalar - trace) <= 1e-13 * std::max(1.0, std::abs(k.ric_nn) + 2.0 * std::abs(k.ric_tt)));
  });
}

TEST_CASE("constant-density ball: round-sphere slice") {
  const CurvatureSample c = curvature_at(make_interior_fluid(1.0, 2.5), 1.0);
  CHECK(c.scalar > 0.0);
  CHECK(c.scalar == doctest::Approx(oracle::fluid_scalar_r1).epsilon(1e-14));
  CHECK(c.ric_nn == doctest::Approx(oracle::fluid_ric_r1).epsilon(1e-14));
  CHECK(c.ric_tt == doctest::Approx(oracle::fluid_ric_r1).epsilon(1e-14));
  CHECK(fluid_source(1.0, 2.5, 1.0).density == doctest::Approx(oracle::fluid_density).epsilon(1e-15));
  CHECK(fluid_source(1.0, 2.5, 3.0).density == 0.0);
}

TEST_CASE("fluid field equations hold under the finite-difference oracle") {
  // N Ric - Hess N = 4 pi N (rho - p) g, R = 16 pi rho, Lap N = 4 pi N (rho + 3p)
  const RadialProfile f = make_interior_fluid(1.0, 2.5);
  gen::for_all(22, 12, [&](gen::Source& s, int i) {
    const double r = s.uniform(0.2, 2.3);
    INFO("case " << i << ", r = " << r);
    const CurvatureSample c = fd_curvature_richardson(f, r, 1e-3);
    const FluidSource src = fluid_source(1.0, 2.5, r);
    const double N = f.lapse(r);
    CHECK(c.vac_residual_nn == doctest::Approx(4 * pi * N * (src.density - src.pressure)).epsilon(1e-9));
    CHECK(c.vac_residual_tt == doctest::Approx(4 * pi * N * (src.density - src.pressure)).epsilon(1e-9));
    CHECK(c.scalar == doctest::Approx(16 * pi * src.density).epsilon(1e-9));
    CHECK(c.lap_N == doctest::Approx(4 * pi * N * (src.density + 3 * src.pressure)).epsilon(1e-9));
  });
}

TEST_CASE("conformal scalar curvature: R(u^4 g) = u^-5 (R u - 8 Lap u)") {
  // On the fluid ball neither R nor Lap u vanish, so both terms and the sign
  // of the Laplacian term are exercised.
  const RadialProfile base = make_interior_fluid(1.0, 2.5);
  const RadialProfile conf = make_collar_conformal(base, 1, 1.0);
  for (double r : {0.5, 1.0, 1.7, 2.2}) {
    INFO("r = " << r);
    const CurvatureSample b = curvature_at(base, r);
    const double u = 0.5 * (1.0 + base.lapse(r));
    const double lap_u = 0.5 * b.lap_N;
    const double fd = fd_curvature_richardson(conf, r, 1e-3).scalar;
    const double minus = (b.scalar * u - 8.0 * lap_u) / std::pow(u, 5);
    const double plus = (b.scalar * u + 8.0 * lap_u) / std::pow(u, 5);
    CHECK(fd == doctest::Approx(minus).epsilon(1e-9));
    CHECK(std::abs(fd - plus) > 1e-2);
    CHECK(curvature_at(conf, r).scalar == doctest::Approx(minus).epsilon(1e-12));
  }
}

TEST_CASE("tabulated residuals stay within the reported interpolation bound") {
  const RadialProfile tab = tabulated_schwarzschild(1.0, 2.5, 100.0, 512);
  const CurvatureSample c = curvature_at(tab, 5.0);
  CHECK(c.interp_error_bound > 0.0);
  CHECK(c.max_vacuum_residual() <= c.interp_error_bound);
  gen::for_all(23, 100, [&](gen::Source& s, int) {
    const CurvatureSample k = curvature_at(tab, s.uniform(2.6, 99.0));
    CHECK(k.max_vacuum_residual() <= k.interp_error_bound);
  });
}

TEST_CASE("surface geometry of schwarzschild spheres") {
  const RadialProfile p = make_schwarzschild_exterior(1.0, 2.0 + 1e-10, 100.0);
  const SurfaceGeometry s3 = surface_geometry(p, 3.0);
  CHECK(s3.H == doctest::Approx(2.0 / (3.0 * std::sqrt(3.0))).epsilon(1e-15));
  CHECK(s3.nu_N == doctest::Approx(1.0 / 9.0).epsilon(1e-15));
  CHECK(s3.sigma_scalar == doctest::Approx(2.0 / 9.0).epsilon(1e-15));
  CHECK(s3.area == doctest::Approx(4 * pi * 9.0).epsilon(1e-15));
  CHECK(surface_geometry(p, 10.0).H == doctest::Approx(2.0 * std::sqrt(0.8) / 10.0).epsilon(1e-15));
  CHECK(surface_geometry(p, 2.0 + 1e-10).H < 1e-5);
  CHECK(std::abs(surface_geometry(p, 7.0).tracefree_h_norm) <= 1e-15);
}

TEST_CASE("neck horizon is minimal") {
  const RadialProfile n = make_schwarzschild_neck(1.0);
  const SurfaceGeometry at = surface_geometry(n, 2.0);
  CHECK(at.minimal_surface);
  CHECK(at.H == 0.0);
  double prev = surface_geometry(n, 2.1).H;
  for (double eps : {1e-2, 1e-4, 1e-6, 1e-8}) {
    const double H = surface_geometry(n, 2.0 + eps).H;
    CHECK(H < prev);
    prev = H;
  }
  CHECK(prev < 1e-3);
}

TEST_CASE("Gauss and surface-Laplacian identities") {
  const std::vector<TestFunction> fs{TestFunction::lapse(), TestFunction::radius(), TestFunction::radius_squared()};
  SUBCASE("worked examples") {
    const auto a = identity_residuals(make_schwarzschild_exterior(1.0, 2.1, 100.0), 4.0, TestFunction::lapse());
    CHECK(std::abs(a.gauss) <= 1e-12);
    CHECK(std::abs(a.surflap) <= 1e-12);
    const auto b = identity_residuals(make_schwarzschild_family(0.0, 1.0, 10.0), 4.0, TestFunction::radius_squared());
    CHECK(std::abs(b.gauss) <= 1e-12);
    CHECK(std::abs(b.surflap) <= 1e-12);
    const auto c = identity_residuals(make_interior_fluid(1.0, 2.5), 1.0, TestFunction::lapse());
    CHECK(std::abs(c.gauss) <= 1e-10);
    CHECK(std::abs(c.surflap) <= 1e-10);
  }
  SUBCASE("all profiles, all test functions") {
    gen::for_all(24, 300, [&](gen::Source& s, int i) {
      const auto cases = profile_family();
      const Case& c = s.pick(cases);
      const TestFunction& f = s.pick(fs);
      const double r = gen::radius(s, c.lo, c.hi);
      INFO("case " << i << ": " << c.name << ", f = " << f.name << ", r = " << r);
      const IdentityResiduals res = identity_residuals(c.profile, r, f);
      CHECK(std::abs(res.gauss) <= 1e-10);
      CHECK(std::abs(res.surflap) <= 1e-10);
    });
  }
}

TEST_CASE("curvature refuses degenerate endpoints") {
  CHECK_THROWS_AS(curvature_at(make_schwarzschild_neck(1.0), 2.0), Error);
  CHECK_THROWS_AS(curvature_at(make_interior_fluid(1.0, 2.5), 0.0), Error);
  CHECK_THROWS_AS(curvature_at(make_schwarzschild_exterior(1.0, 3.0, 4.0), 5.0), Error);
}
