#pragma once

// Internal: concrete profile models and the templated evaluation behind
// RadialProfile. Only profile.cpp and tests should need this header.

#include <cmath>
#include <variant>
#include <vector>

#include "profile.hpp"
#include "spline.hpp"

namespace psu::detail {

struct SchwarzschildModel {
  double m;
};

struct NeckModel {
  double mu;
};

struct FluidModel {
  double m;
  double r_body;
};

struct TabulatedModel {
  CubicSpline N, A, R;
};

struct TransformModel {
  enum class Rule { fermat, collar_conformal };
  RadialProfile base;
  Rule rule;
  int psi_sign = 1;
  double psi_scale = 1.0;
  double u_offset = 0.0;
  double u_quadratic = 0.0;
};

struct PiecewiseModel {
  std::vector<RadialProfile> pieces;  // ordered, adjacent
};

struct ProfileModel {
  ProfileKind kind;
  Interval domain;
  std::variant<SchwarzschildModel, NeckModel, FluidModel, TabulatedModel, TransformModel,
               PiecewiseModel>
      impl;
};

template <class T>
FrameJet<T> frame_from_jet(const MetricJet<T>& j) {
  // f_s = f'/A, f_ss = (f'' A - f' A') / A^3
  const T A = j.A.v;
  auto to_frame = [&](const Jet2<T>& f) {
    return Jet2<T>{f.v, f.d / A, (f.dd * A - f.d * j.A.d) / (A * A * A)};
  };
  return {to_frame(j.N), to_frame(j.R), A};
}

inline const RadialProfile& piece_at(const PiecewiseModel& pw, double r) {
  // The outer piece owns a shared breakpoint.
  for (std::size_t i = pw.pieces.size(); i-- > 0;) {
    if (r >= pw.pieces[i].domain().lo) return pw.pieces[i];
  }
  return pw.pieces.front();
}

template <class T>
Jet2<T> collar_u(const TransformModel& t, const Jet2<T>& N) {
  // psi = sign * scale * N. The reflected branch is written as 1 - (1 + |psi|)/2
  // so that u(reflect p) = 1 - u(p) holds exactly in floating point.
  const Jet2<T> scaled = N * T(t.psi_scale);
  Jet2<T> u = t.psi_sign > 0 ? (T(1) + scaled) * T(0.5) : T(1) - (T(1) + scaled) * T(0.5);
  u.v += T(t.u_offset);
  if (t.u_quadratic != 0.0) u += square(scaled) * T(t.u_quadratic);
  return u;
}

template <class T>
MetricJet<T> eval_jet(const ProfileModel& m, const T& r);

template <class T>
FrameJet<T> eval_frame(const ProfileModel& m, const T& r);

template <class T>
MetricJet<T> eval_jet(const ProfileModel& model, const T& r) {
  using std::sqrt;
  const Jet2<T> x = Jet2<T>::variable(r);
  return std::visit(
      [&](const auto& impl) -> MetricJet<T> {
        using M = std::decay_t<decltype(impl)>;
        if constexpr (std::is_same_v<M, SchwarzschildModel>) {
          const Jet2<T> N = sqrt(T(1) - T(2 * impl.m) / x);
          return {N, reciprocal(N), x};
        } else if constexpr (std::is_same_v<M, NeckModel>) {
          const Jet2<T> phi = sqrt(T(1) - T(2 * impl.mu) / x);
          return {phi, reciprocal(phi), x};
        } else if constexpr (std::is_same_v<M, FluidModel>) {
          const T rb3 = T(impl.r_body) * T(impl.r_body) * T(impl.r_body);
          const Jet2<T> inner = sqrt(T(1) - x * x * (T(2 * impl.m) / rb3));
          const T surface = sqrt(T(1) - T(2 * impl.m) / T(impl.r_body));
          const Jet2<T> N = T(1.5) * surface - inner * T(0.5);
          return {N, reciprocal(inner), x};
        } else if constexpr (std::is_same_v<M, TabulatedModel>) {
          return {impl.N.eval(r), impl.A.eval(r), impl.R.eval(r)};
        } else if constexpr (std::is_same_v<M, TransformModel>) {
          const MetricJet<T> b = impl.base.raw_jet(r);
          if (impl.rule == TransformModel::Rule::fermat) {
            const Jet2<T> c = reciprocal(b.N);
            return {b.N, c * b.A, c * b.R};
          }
          const Jet2<T> u = collar_u(impl, b.N);
          const Jet2<T> c = u * u;
          return {u, c * b.A, c * b.R};
        } else {
          return piece_at(impl, static_cast<double>(r)).raw_jet(r);
        }
      },
      model.impl);
}

template <class T>
FrameJet<T> eval_frame(const ProfileModel& model, const T& r) {
  return std::visit(
      [&](const auto& impl) -> FrameJet<T> {
        using M = std::decay_t<decltype(impl)>;
        if constexpr (std::is_same_v<M, NeckModel>) {
          // Regular up to the horizon: phi_s = mu/r^2, r_s = phi.
          using std::sqrt;
          const T mu(impl.mu);
          const T phi = sqrt(T(1) - T(2) * mu / r);
          const T r2 = r * r;
          return {{phi, mu / r2, T(-2) * mu * phi / (r2 * r)}, {r, phi, mu / r2}, T(1) / phi};
        } else if constexpr (std::is_same_v<M, TransformModel>) {
          const FrameJet<T> b = impl.base.raw_frame(r);
          Jet2<T> c, lapse;
          if (impl.rule == TransformModel::Rule::fermat) {
            c = reciprocal(b.N);
            lapse = b.N;
          } else {
            lapse = collar_u(impl, b.N);
            c = lapse * lapse;
          }
          const Jet2<T> R = c * b.R;
          return {reparametrize(lapse, c), reparametrize(R, c), c.v * b.A};
        } else if constexpr (std::is_same_v<M, PiecewiseModel>) {
          return piece_at(impl, static_cast<double>(r)).raw_frame(r);
        } else {
          return frame_from_jet(eval_jet(model, r));
        }
      },
      model.impl);
}

}  // namespace psu::detail
