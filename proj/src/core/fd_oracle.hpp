#pragma once

#include <array>
#include <span>
#include <vector>

#include "curvature.hpp"
#include "profile.hpp"

namespace psu {

// Independent curvature oracle. Only the metric components A(r), R(r) and the
// lapse N(r) are read; everything else comes from centered differences in a
// Cartesian chart, in binary128 arithmetic:
//   Gamma  from differences of g_ij,
//   Ricci  from differences of Gamma,
//   Hess N from differences of N and Gamma.
// Requires [r - 2h, r + 2h] inside the profile domain.
CurvatureSample fd_curvature_oracle(const RadialProfile& profile, double r, double h);

// One Richardson step on the oracle: (4 F(h/2) - F(h)) / 3, fourth order.
CurvatureSample fd_curvature_richardson(const RadialProfile& profile, double r, double h);

// Per-field absolute differences |closed form - oracle| over the six curvature
// fields (ric_nn, ric_tt, scalar, hess_nn, hess_tt, lap_N).
std::array<double, 6> curvature_differences(const CurvatureSample& a, const CurvatureSample& b);

struct ConvergenceStudy {
  double r = 0.0;
  std::vector<double> steps;
  std::vector<double> errors;  // max over fields
  std::vector<double> rates;   // between consecutive steps
  double constant = 0.0;       // C in err ~ C h^2, from the smallest step
};

ConvergenceStudy fd_convergence(const RadialProfile& profile, double r, std::span<const double> steps);

}  // namespace psu
