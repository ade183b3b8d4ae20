#include <doctest.h>

#include <cmath>
#include <vector>

#include "audit.hpp"
#include "generators.hpp"
#include "geodesics.hpp"
#include "oracle_values.hpp"
#include "profile.hpp"

using namespace psu;

TEST_CASE("audit at the schwarzschild photon sphere") {
  const RadialProfile p = make_schwarzschild_exterior(1.0, 2.1, 100.0);
  const IdentityReport a = audit_sphere(p, 3.0);
  CHECK(std::abs(a.res_NH) <= 1e-12);
  CHECK(std::abs(a.res_rH) <= 1e-12);
  CHECK(std::abs(a.res_sigmaR) <= 1e-12);
  CHECK(std::abs(a.res_umbilic) <= 1e-12);
  CHECK(a.mass_i == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a.mass_from_H == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a.spacetime_H == doctest::Approx(1.0 / std::sqrt(3.0)).epsilon(1e-15));
  CHECK(a.H_positive);
  CHECK(a.photon_sphere);
}

TEST_CASE("audit away from the photon sphere names the failing identity") {
  const RadialProfile p = make_schwarzschild_exterior(1.0, 2.1, 100.0);
  const IdentityReport a = audit_sphere(p, 2.9);
  CHECK_FALSE(a.photon_sphere);
  CHECK(a.res_rH == doctest::Approx(oracle::res_rH_at_2_9).epsilon(1e-13));
  CHECK(a.worst_residual == "res_rH");
  CHECK(a.worst_value == a.res_rH);
  CHECK(audit_sphere(p, 4.0).res_rH == doctest::Approx(oracle::res_rH_at_4).epsilon(1e-13));

  const IdentityReport flat = audit_sphere(make_schwarzschild_family(0.0, 1.0, 10.0), 5.0);
  CHECK(flat.mass_i == 0.0);
  CHECK(flat.res_rH == doctest::Approx(4.0 - 4.0 / 3.0));
  CHECK_FALSE(flat.photon_sphere);
}

TEST_CASE("every detected photon sphere passes the audit") {
  gen::for_all(41, 30, [](gen::Source& s, int i) {
    const double m = gen::mass(s);
    const RadialProfile p = make_schwarzschild_exterior(m, s.uniform(2.05, 2.9) * m, s.uniform(10.0, 200.0) * m);
    INFO("case " << i << ", m = " << m);
    for (double r : photon_sphere_search(p)) {
      const IdentityReport a = audit_sphere(p, r);
      CHECK(a.photon_sphere);
      CHECK(a.H_positive);
      CHECK(std::abs(a.res_NH) <= 1e-10 * std::max(1.0, 1.0 / m));
      CHECK(std::abs(a.res_rH) <= 1e-10);
      CHECK(std::abs(a.res_sigmaR) <= 1e-10 / (m * m));
      // N_i = sqrt(3) m_i / r_i
      CHECK(std::abs(a.res_chain) <= 1e-12);
      CHECK(a.mass_from_H == doctest::Approx(component_mass(p, r).analytic).epsilon(1e-12));
      CHECK(a.sigma_scalar > 0.0);
    }
  });
}

TEST_CASE("star photon sphere passes the audit") {
  const RadialProfile star = make_star(1.0, 2.5, 100.0);
  const IdentityReport a = audit_sphere(star, 3.0);
  CHECK(a.photon_sphere);
  CHECK(a.mass_i == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("component mass is conserved in vacuum") {
  const RadialProfile p = make_schwarzschild_exterior(1.0, 2.1, 100.0);
  for (double r : {3.0, 10.0, 57.0}) {
    const ComponentMass c = component_mass(p, r);
    CHECK(c.analytic == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(c.quadrature == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.panels == 4096);
  }
  CHECK(component_mass(make_schwarzschild_family(0.0, 1.0, 10.0), 4.0).analytic == 0.0);
}

TEST_CASE("monotonicity of H/N along the outward flow") {
  const RadialProfile p = make_schwarzschild_exterior(1.0, 2.1, 100.0);
  const MonotonicityReport m = monotonicity_scan(p, 3.0, 100.0, 256);
  CHECK(m.violations == 0);
  CHECK(m.samples.size() == 256);
  for (const auto& s : m.samples) CHECK(s.H_over_N == doctest::Approx(2.0 / s.r).epsilon(1e-13));
  for (std::size_t k = 1; k < m.samples.size(); ++k) CHECK(m.samples[k].t > m.samples[k - 1].t);

  const MonotonicityReport flat = monotonicity_scan(make_schwarzschild_family(0.0, 1.0, 100.0), 3.0, 100.0, 256);
  CHECK(flat.violations == 0);
  CHECK(flat.samples.back().t == doctest::Approx(97.0).epsilon(1e-12));

  const MonotonicityReport star = monotonicity_scan(make_star(1.0, 2.5, 100.0), 2.5, 100.0, 256);
  CHECK(star.violations == 0);
}

TEST_CASE("arclength of the schwarzschild flow") {
  // t(r) = sqrt(r(r-2)) + 2 log(sqrt(r) + sqrt(r-2)) for m = 1.
  auto t = [](double r) { return std::sqrt(r * (r - 2)) + 2 * std::log(std::sqrt(r) + std::sqrt(r - 2)); };
  const MonotonicityReport m = monotonicity_scan(make_schwarzschild_exterior(1.0, 2.1, 100.0), 3.0, 100.0, 16);
  for (const auto& s : m.samples) CHECK(s.t == doctest::Approx(t(s.r) - t(3.0)).epsilon(1e-12));
}

TEST_CASE("positivity") {
  const RadialProfile p = make_schwarzschild_exterior(1.0, 2.0 + 1e-12, 100.0);
  CHECK(positivity_check(p, 3.0));
  CHECK(positivity_check(make_schwarzschild_family(-1.0, 1.0, 10.0), 3.0));
  CHECK_FALSE(positivity_check(make_schwarzschild_neck(1.0), 2.0));
  CHECK_FALSE(positivity_check(p, 200.0));
}

TEST_CASE("batch audit keeps input order") {
  const RadialProfile p = make_schwarzschild_exterior(1.0, 2.1, 100.0);
  const std::vector<double> radii{5.0, 3.0, 2.5, 40.0};
  const auto out = audit_spheres(p, radii);
  REQUIRE(out.size() == radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) CHECK(out[i].r0 == radii[i]);
}
