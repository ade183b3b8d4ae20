#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jet.hpp"
#include "quad.hpp"

namespace psu {

enum class ProfileKind {
  schwarzschild_exterior,
  schwarzschild_neck,
  interior_fluid,
  tabulated,
  composite_reference,
};

const char* to_string(ProfileKind kind);

// Endpoints where A or the area radius degenerates; callers get a flag
// instead of a number there.
enum class EndpointLimit { none, horizon, regular_center };

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double r) const { return r >= lo && r <= hi; }
  bool interior(double r) const { return r > lo && r < hi; }
  double width() const { return hi - lo; }
};

// N, A, R with derivatives along the radial coordinate r
// (g = A^2 dr^2 + R^2 Omega, lapse N).
template <class T>
struct MetricJet {
  Jet2<T> N, A, R;
};

// N and R with derivatives along g-arclength s (ds = A dr), plus A itself.
// At a Schwarzschild horizon A is infinite but this jet stays finite.
template <class T>
struct FrameJet {
  Jet2<T> N, R;
  T A{0};
};

namespace detail {
struct ProfileModel;
}

// A static spherically symmetric triple (M, g, N) in a radial chart. Immutable
// and cheap to copy; copies share the underlying model.
class RadialProfile {
 public:
  ProfileKind kind() const;
  Interval domain() const;
  std::string describe() const;

  EndpointLimit limit_at(double r) const;

  // Checked evaluation: throws domain_violation outside the domain and
  // one_sided_limit at a degenerate endpoint.
  MetricJet<double> jet(double r) const;
  // Checked arclength-frame evaluation. Finite one-sided limits (the neck
  // horizon) are returned; non-finite ones throw one_sided_limit.
  FrameJet<double> frame(double r) const;
  double lapse(double r) const { return jet(r).N.v; }

  // Unchecked evaluation in double or Quad.
  template <class T> MetricJet<T> raw_jet(const T& r) const;
  template <class T> FrameJet<T> raw_frame(const T& r) const;

  // Same metric on another interval. Closed-form kinds may be extended past
  // their original interval; tabulated data may not leave its nodes.
  RadialProfile restricted(double lo, double hi) const;

  // Mass-like parameter of closed-form kinds (m, or mu for the neck).
  std::optional<double> parameter() const;
  // Interior breakpoints where the metric is only C^1 (piecewise kinds).
  std::vector<double> breakpoints() const;
  // Node positions for tabulated data (empty otherwise).
  std::vector<double> nodes() const;

  // Derivative-slot error bounds for tabulated data: {N, A, R} x {v, d, dd}.
  // All zero for closed-form kinds.
  std::optional<MetricJet<double>> interpolation_error(double r) const;

  const detail::ProfileModel& model() const { return *model_; }
  explicit RadialProfile(std::shared_ptr<const detail::ProfileModel> model);

 private:
  std::shared_ptr<const detail::ProfileModel> model_;
};

extern template MetricJet<double> RadialProfile::raw_jet<double>(const double&) const;
extern template MetricJet<Quad> RadialProfile::raw_jet<Quad>(const Quad&) const;
extern template FrameJet<double> RadialProfile::raw_frame<double>(const double&) const;
extern template FrameJet<Quad> RadialProfile::raw_frame<Quad>(const Quad&) const;

// Spatial Schwarzschild exterior of mass m > 0 on [r_lo, r_hi], r_lo > 2m.
RadialProfile make_schwarzschild_exterior(double m, double r_lo, double r_hi);
// Any real m (m <= 0 gives the negative-mass and Minkowski controls).
RadialProfile make_schwarzschild_family(double m, double r_lo, double r_hi);
// Schwarzschild of mass mu between horizon and photon sphere, [2mu, 3mu];
// lapse slot holds phi = sqrt(1 - 2mu/r).
RadialProfile make_schwarzschild_neck(double mu);
// Neck section [2mu, r_top] for arbitrary r_top > 2mu (hand-built mismatches).
RadialProfile make_neck_section(double mu, double r_top);
// Constant-density perfect-fluid ball on [0, R_b]; requires 2m/R_b < 8/9.
RadialProfile make_interior_fluid(double m, double r_body);
// Fluid ball glued to its vacuum exterior, [0, r_hi].
RadialProfile make_star(double m, double r_body, double r_hi);
RadialProfile make_tabulated(std::span<const double> r, std::span<const double> N,
                             std::span<const double> A, std::span<const double> R);

// Conformal rescalings. The Fermat metric N^-2 g; and u^4 g with
// u = (1 + psi)/2 + offset + quadratic psi^2, psi = sign * scale * N (the
// collar rule; offset and quadratic are nonzero only in corruption runs).
RadialProfile make_fermat(const RadialProfile& base);
RadialProfile make_collar_conformal(const RadialProfile& base, int psi_sign, double psi_scale,
                                    double u_offset = 0.0, double u_quadratic = 0.0);

// Density and pressure of the interior fluid at r (zero outside the body).
struct FluidSource {
  double density = 0.0;
  double pressure = 0.0;
};
FluidSource fluid_source(double m, double r_body, double r);

}  // namespace psu
