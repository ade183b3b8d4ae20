#include "fd_oracle.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace psu {

namespace {

using Vec3 = std::array<Quad, 3>;
using Mat3 = std::array<std::array<Quad, 3>, 3>;
using Gamma = std::array<Mat3, 3>;  // Gamma[k][i][j] = Gamma^k_ij

class CartesianMetric {
 public:
  CartesianMetric(const RadialProfile& profile, Quad h) : profile_(profile), h_(h) {}

  Mat3 metric(const Vec3& x) const {
    const Quad rho = norm(x);
    const MetricJet<Quad> j = profile_.raw_jet(rho);
    const Quad a2 = j.A.v * j.A.v;
    const Quad t2 = (j.R.v / rho) * (j.R.v / rho);
    Mat3 g{};
    for (int i = 0; i < 3; ++i) {
      for (int k = 0; k < 3; ++k) {
        const Quad nn = (x[i] / rho) * (x[k] / rho);
        g[i][k] = a2 * nn + t2 * ((i == k ? Quad(1) : Quad(0)) - nn);
      }
    }
    return g;
  }

  Quad lapse(const Vec3& x) const { return profile_.raw_jet(norm(x)).N.v; }

  Gamma christoffel(const Vec3& x) const {
    std::array<Mat3, 3> dg{};  // dg[l][i][j] = d_l g_ij
    for (int l = 0; l < 3; ++l) {
      const Mat3 gp = metric(shift(x, l, h_));
      const Mat3 gm = metric(shift(x, l, -h_));
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) dg[l][i][j] = (gp[i][j] - gm[i][j]) / (2 * h_);
    }
    const Mat3 ginv = inverse(metric(x));
    Gamma G{};
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          Quad s = 0;
          for (int l = 0; l < 3; ++l) s += ginv[k][l] * (dg[i][l][j] + dg[j][l][i] - dg[l][i][j]);
          G[k][i][j] = s / 2;
        }
    return G;
  }

  static Vec3 shift(Vec3 x, int axis, const Quad& by) {
    x[axis] += by;
    return x;
  }

  static Quad norm(const Vec3& x) { return sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]); }

  static Mat3 inverse(const Mat3& m) {
    Mat3 c{};
    c[0][0] = m[1][1] * m[2][2] - m[1][2] * m[2][1];
    c[0][1] = m[0][2] * m[2][1] - m[0][1] * m[2][2];
    c[0][2] = m[0][1] * m[1][2] - m[0][2] * m[1][1];
    c[1][0] = m[1][2] * m[2][0] - m[1][0] * m[2][2];
    c[1][1] = m[0][0] * m[2][2] - m[0][2] * m[2][0];
    c[1][2] = m[0][2] * m[1][0] - m[0][0] * m[1][2];
    c[2][0] = m[1][0] * m[2][1] - m[1][1] * m[2][0];
    c[2][1] = m[0][1] * m[2][0] - m[0][0] * m[2][1];
    c[2][2] = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    const Quad det = m[0][0] * c[0][0] + m[0][1] * c[1][0] + m[0][2] * c[2][0];
    for (auto& row : c)
      for (auto& v : row) v /= det;
    return c;
  }

 private:
  const RadialProfile& profile_;
  Quad h_;
};

}  // namespace

CurvatureSample fd_curvature_oracle(const RadialProfile& profile, double r, double h) {
  if (!(h > 0.0)) throw Error(ErrorCode::invalid_argument, "oracle step must be positive", h);
  const Interval dom = profile.domain();
  if (!(r - 2.0 * h >= dom.lo && r + 2.0 * h <= dom.hi)) {
    throw Error(ErrorCode::domain_violation, "finite-difference stencil exits the profile domain", r);
  }
  if (profile.limit_at(r - 2.0 * h) != EndpointLimit::none) {
    throw Error(ErrorCode::domain_violation, "finite-difference stencil touches a degenerate endpoint", r);
  }

  const Quad hq(h);
  const CartesianMetric cm(profile, hq);
  const Vec3 x0{Quad(r), Quad(0), Quad(0)};

  const Gamma G0 = cm.christoffel(x0);
  std::array<Gamma, 3> dG{};  // dG[m][k][i][j] = d_m Gamma^k_ij
  for (int m = 0; m < 3; ++m) {
    const Gamma Gp = cm.christoffel(CartesianMetric::shift(x0, m, hq));
    const Gamma Gm = cm.christoffel(CartesianMetric::shift(x0, m, -hq));
    for (int k = 0; k < 3; ++k)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) dG[m][k][i][j] = (Gp[k][i][j] - Gm[k][i][j]) / (2 * hq);
  }

  Mat3 ric{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Quad s = 0;
      for (int k = 0; k < 3; ++k) {
        s += dG[k][k][i][j] - dG[j][k][k][i];
        for (int l = 0; l < 3; ++l) s += G0[k][k][l] * G0[l][i][j] - G0[k][j][l] * G0[l][k][i];
      }
      ric[i][j] = s;
    }

  // Lapse derivatives.
  const Quad N0 = cm.lapse(x0);
  Vec3 dN{};
  Mat3 d2N{};
  for (int i = 0; i < 3; ++i) {
    const Quad np = cm.lapse(CartesianMetric::shift(x0, i, hq));
    const Quad nm = cm.lapse(CartesianMetric::shift(x0, i, -hq));
    dN[i] = (np - nm) / (2 * hq);
    d2N[i][i] = (np - 2 * N0 + nm) / (hq * hq);
  }
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      auto at = [&](int si, int sj) {
        return cm.lapse(CartesianMetric::shift(CartesianMetric::shift(x0, i, si * hq), j, sj * hq));
      };
      d2N[i][j] = d2N[j][i] = (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4 * hq * hq);
    }
  Mat3 hess{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      Quad s = d2N[i][j];
      for (int k = 0; k < 3; ++k) s -= G0[k][i][j] * dN[k];
      hess[i][j] = s;
    }

  const Mat3 g0 = cm.metric(x0);
  const Mat3 ginv = CartesianMetric::inverse(g0);
  Quad scalar = 0, lap = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      scalar += ginv[i][j] * ric[i][j];
      lap += ginv[i][j] * hess[i][j];
    }

  // Unit normal along e_x has g_xx = A^2; unit tangent along e_y has g_yy = R^2/r^2.
  const Quad gxx = g0[0][0], gyy = g0[1][1];
  CurvatureSample c;
  c.r = r;
  const Quad ric_nn = ric[0][0] / gxx, ric_tt = ric[1][1] / gyy;
  const Quad hess_nn = hess[0][0] / gxx, hess_tt = hess[1][1] / gyy;
  c.ric_nn = to_double(ric_nn);
  c.ric_tt = to_double(ric_tt);
  c.scalar = to_double(scalar);
  c.hess_nn = to_double(hess_nn);
  c.hess_tt = to_double(hess_tt);
  c.lap_N = to_double(lap);
  c.vac_residual_nn = to_double(N0 * ric_nn - hess_nn);
  c.vac_residual_tt = to_double(N0 * ric_tt - hess_tt);
  c.scalar_residual = c.scalar;
  c.lap_residual = c.lap_N;
  return c;
}

CurvatureSample fd_curvature_richardson(const RadialProfile& profile, double r, double h) {
  const CurvatureSample coarse = fd_curvature_oracle(profile, r, h);
  const CurvatureSample fine = fd_curvature_oracle(profile, r, 0.5 * h);
  auto mix = [](double f, double c) { return (4.0 * f - c) / 3.0; };
  CurvatureSample out;
  out.r = r;
  out.ric_nn = mix(fine.ric_nn, coarse.ric_nn);
  out.ric_tt = mix(fine.ric_tt, coarse.ric_tt);
  out.scalar = mix(fine.scalar, coarse.scalar);
  out.hess_nn = mix(fine.hess_nn, coarse.hess_nn);
  out.hess_tt = mix(fine.hess_tt, coarse.hess_tt);
  out.lap_N = mix(fine.lap_N, coarse.lap_N);
  out.vac_residual_nn = mix(fine.vac_residual_nn, coarse.vac_residual_nn);
  out.vac_residual_tt = mix(fine.vac_residual_tt, coarse.vac_residual_tt);
  out.scalar_residual = out.scalar;
  out.lap_residual = out.lap_N;
  return out;
}

std::array<double, 6> curvature_differences(const CurvatureSample& a, const CurvatureSample& b) {
  return {std::abs(a.ric_nn - b.ric_nn),   std::abs(a.ric_tt - b.ric_tt),
          std::abs(a.scalar - b.scalar),   std::abs(a.hess_nn - b.hess_nn),
          std::abs(a.hess_tt - b.hess_tt), std::abs(a.lap_N - b.lap_N)};
}

ConvergenceStudy fd_convergence(const RadialProfile& profile, double r, std::span<const double> steps) {
  ConvergenceStudy study;
  study.r = r;
  const CurvatureSample exact = curvature_at(profile, r);
  for (double h : steps) {
    const auto d = curvature_differences(exact, fd_curvature_oracle(profile, r, h));
    study.steps.push_back(h);
    study.errors.push_back(*std::max_element(d.begin(), d.end()));
  }
  for (std::size_t k = 0; k + 1 < study.errors.size(); ++k) {
    study.rates.push_back(std::log(study.errors[k] / study.errors[k + 1]) /
                          std::log(study.steps[k] / study.steps[k + 1]));
  }
  if (!study.steps.empty()) {
    const double h = study.steps.back();
    study.constant = study.errors.back() / (h * h);
  }
  return study;
}

}  // namespace psu
