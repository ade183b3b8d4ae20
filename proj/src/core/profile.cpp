#include "profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "error.hpp"
#include "profile_model.hpp"

namespace psu {

using detail::FluidModel;
using detail::NeckModel;
using detail::PiecewiseModel;
using detail::ProfileModel;
using detail::SchwarzschildModel;
using detail::TabulatedModel;
using detail::TransformModel;

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid_argument";
    case ErrorCode::domain_violation: return "domain_violation";
    case ErrorCode::one_sided_limit: return "one_sided_limit";
    case ErrorCode::buchdahl_violation: return "buchdahl_violation";
    case ErrorCode::audit_refused: return "audit_refused";
    case ErrorCode::not_rigid: return "not_rigid";
    case ErrorCode::non_null_initial_data: return "non_null_initial_data";
    case ErrorCode::step_underflow: return "step_underflow";
    case ErrorCode::guard_band: return "guard_band";
    case ErrorCode::no_minimal_boundary: return "no_minimal_boundary";
    case ErrorCode::config: return "config";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

const char* to_string(ProfileKind kind) {
  switch (kind) {
    case ProfileKind::schwarzschild_exterior: return "schwarzschild_exterior";
    case ProfileKind::schwarzschild_neck: return "schwarzschild_neck";
    case ProfileKind::interior_fluid: return "interior_fluid";
    case ProfileKind::tabulated: return "tabulated";
    case ProfileKind::composite_reference: return "composite_reference";
  }
  return "unknown";
}

namespace {

RadialProfile wrap(ProfileKind kind, Interval domain, decltype(ProfileModel::impl) impl) {
  return RadialProfile(std::make_shared<const ProfileModel>(ProfileModel{kind, domain, std::move(impl)}));
}

void require_interval(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
    std::ostringstream os;
    os << "empty or non-finite domain [" << lo << ", " << hi << "]";
    throw Error(ErrorCode::domain_violation, os.str());
  }
}

void require_schwarzschild_domain(double m, double lo, double hi) {
  require_interval(lo, hi);
  const double floor = std::max(0.0, 2.0 * m);
  if (!(lo > floor)) {
    std::ostringstream os;
    os << "r_lo = " << lo << " must exceed max(0, 2m) = " << floor
       << " (static coordinates degenerate)";
    throw Error(ErrorCode::domain_violation, os.str());
  }
}

}  // namespace

RadialProfile::RadialProfile(std::shared_ptr<const ProfileModel> model) : model_(std::move(model)) {}

ProfileKind RadialProfile::kind() const { return model_->kind; }
Interval RadialProfile::domain() const { return model_->domain; }

std::string RadialProfile::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << to_string(kind()) << " on [" << domain().lo << ", " << domain().hi << "]";
  std::visit(
      [&](const auto& impl) {
        using M = std::decay_t<decltype(impl)>;
        if constexpr (std::is_same_v<M, SchwarzschildModel>) os << ", m = " << impl.m;
        if constexpr (std::is_same_v<M, NeckModel>) os << ", mu = " << impl.mu;
        if constexpr (std::is_same_v<M, FluidModel>) os << ", m = " << impl.m << ", R_b = " << impl.r_body;
        if constexpr (std::is_same_v<M, TabulatedModel>) os << ", " << impl.N.size() << " nodes";
        if constexpr (std::is_same_v<M, TransformModel>) {
          os << (impl.rule == TransformModel::Rule::fermat ? ", Fermat of " : ", collar-conformal of ")
             << impl.base.describe();
        }
        if constexpr (std::is_same_v<M, PiecewiseModel>) os << ", " << impl.pieces.size() << " pieces";
      },
      model_->impl);
  return os.str();
}

EndpointLimit RadialProfile::limit_at(double r) const {
  return std::visit(
      [&](const auto& impl) -> EndpointLimit {
        using M = std::decay_t<decltype(impl)>;
        if constexpr (std::is_same_v<M, NeckModel>) {
          return r == 2.0 * impl.mu ? EndpointLimit::horizon : EndpointLimit::none;
        } else if constexpr (std::is_same_v<M, FluidModel>) {
          return r == 0.0 ? EndpointLimit::regular_center : EndpointLimit::none;
        } else if constexpr (std::is_same_v<M, TransformModel>) {
          return impl.base.limit_at(r);
        } else if constexpr (std::is_same_v<M, PiecewiseModel>) {
          return detail::piece_at(impl, r).limit_at(r);
        } else {
          return EndpointLimit::none;
        }
      },
      model_->impl);
}

MetricJet<double> RadialProfile::jet(double r) const {
  if (!domain().contains(r)) {
    std::ostringstream os;
    os.precision(17);
    os << "r = " << r << " outside " << describe();
    throw Error(ErrorCode::domain_violation, os.str(), r);
  }
  if (limit_at(r) != EndpointLimit::none) {
    std::ostringstream os;
    os.precision(17);
    os << "r = " << r << " is a degenerate endpoint ("
       << (limit_at(r) == EndpointLimit::horizon ? "horizon" : "regular center") << ") of " << describe();
    throw Error(ErrorCode::one_sided_limit, os.str(), r);
  }
  return raw_jet(r);
}

FrameJet<double> RadialProfile::frame(double r) const {
  if (!domain().contains(r)) {
    std::ostringstream os;
    os.precision(17);
    os << "r = " << r << " outside " << describe();
    throw Error(ErrorCode::domain_violation, os.str(), r);
  }
  const FrameJet<double> f = raw_frame(r);
  const bool finite = std::isfinite(f.N.v) && std::isfinite(f.N.d) && std::isfinite(f.N.dd) &&
                      std::isfinite(f.R.v) && std::isfinite(f.R.d) && std::isfinite(f.R.dd);
  if (!finite || limit_at(r) == EndpointLimit::regular_center) {
    throw Error(ErrorCode::one_sided_limit, "arclength frame degenerates at r = " + std::to_string(r), r);
  }
  return f;
}

template <class T>
MetricJet<T> RadialProfile::raw_jet(const T& r) const {
  return detail::eval_jet(*model_, r);
}

template <class T>
FrameJet<T> RadialProfile::raw_frame(const T& r) const {
  return detail::eval_frame(*model_, r);
}

template MetricJet<double> RadialProfile::raw_jet<double>(const double&) const;
template MetricJet<Quad> RadialProfile::raw_jet<Quad>(const Quad&) const;
template FrameJet<double> RadialProfile::raw_frame<double>(const double&) const;
template FrameJet<Quad> RadialProfile::raw_frame<Quad>(const Quad&) const;

RadialProfile RadialProfile::restricted(double lo, double hi) const {
  return std::visit(
      [&](const auto& impl) -> RadialProfile {
        using M = std::decay_t<decltype(impl)>;
        if constexpr (std::is_same_v<M, SchwarzschildModel>) {
          require_schwarzschild_domain(impl.m, lo, hi);
          return wrap(kind(), {lo, hi}, impl);
        } else if constexpr (std::is_same_v<M, NeckModel>) {
          require_interval(lo, hi);
          if (lo < 2.0 * impl.mu) throw Error(ErrorCode::domain_violation, "neck section below its horizon");
          return wrap(kind(), {lo, hi}, impl);
        } else if constexpr (std::is_same_v<M, FluidModel>) {
          require_interval(lo, hi);
          if (lo < 0.0 || hi > impl.r_body) {
            throw Error(ErrorCode::domain_violation, "fluid interior restricted outside [0, R_b]");
          }
          return wrap(kind(), {lo, hi}, impl);
        } else if constexpr (std::is_same_v<M, TabulatedModel>) {
          require_interval(lo, hi);
          if (lo < impl.N.nodes().front() || hi > impl.N.nodes().back()) {
            throw Error(ErrorCode::domain_violation, "tabulated profile cannot be extended past its nodes");
          }
          return wrap(kind(), {lo, hi}, impl);
        } else if constexpr (std::is_same_v<M, TransformModel>) {
          TransformModel t = impl;
          t.base = impl.base.restricted(lo, hi);
          return wrap(kind(), {lo, hi}, std::move(t));
        } else {
          require_interval(lo, hi);
          PiecewiseModel pw;
          for (std::size_t i = 0; i < impl.pieces.size(); ++i) {
            const RadialProfile& p = impl.pieces[i];
            // First and last pieces may be extended outward.
            const double plo = i == 0 ? lo : std::max(lo, p.domain().lo);
            const double phi = i + 1 == impl.pieces.size() ? hi : std::min(hi, p.domain().hi);
            if (plo < phi) pw.pieces.push_back(p.restricted(plo, phi));
          }
          if (pw.pieces.empty()) throw Error(ErrorCode::domain_violation, "restriction removes every piece");
          return wrap(kind(), {lo, hi}, std::move(pw));
        }
      },
      model_->impl);
}

std::optional<double> RadialProfile::parameter() const {
  return std::visit(
      [](const auto& impl) -> std::optional<double> {
        using M = std::decay_t<decltype(impl)>;
        if constexpr (std::is_same_v<M, SchwarzschildModel> || std::is_same_v<M, FluidModel>) return impl.m;
        if constexpr (std::is_same_v<M, NeckModel>) return impl.mu;
        return std::nullopt;
      },
      model_->impl);
}

std::vector<double> RadialProfile::breakpoints() const {
  return std::visit(
      [](const auto& impl) -> std::vector<double> {
        using M = std::decay_t<decltype(impl)>;
        if constexpr (std::is_same_v<M, PiecewiseModel>) {
          std::vector<double> out;
          for (std::size_t i = 1; i < impl.pieces.size(); ++i) out.push_back(impl.pieces[i].domain().lo);
          return out;
        } else if constexpr (std::is_same_v<M, TransformModel>) {
          return impl.base.breakpoints();
        } else {
          return {};
        }
      },
      model_->impl);
}

std::vector<double> RadialProfile::nodes() const {
  return std::visit(
      [](const auto& impl) -> std::vector<double> {
        using M = std::decay_t<decltype(impl)>;
        if constexpr (std::is_same_v<M, TabulatedModel>) return impl.N.nodes();
        if constexpr (std::is_same_v<M, TransformModel>) return impl.base.nodes();
        return {};
      },
      model_->impl);
}

std::optional<MetricJet<double>> RadialProfile::interpolation_error(double r) const {
  const auto* tab = std::get_if<TabulatedModel>(&model_->impl);
  if (tab == nullptr) return std::nullopt;
  auto slot = [&](const CubicSpline& s) {
    const auto b = s.error_bound(r);
    return Jet2<double>{b.value, b.d1, b.d2};
  };
  return MetricJet<double>{slot(tab->N), slot(tab->A), slot(tab->R)};
}

RadialProfile make_schwarzschild_exterior(double m, double r_lo, double r_hi) {
  if (!(m > 0.0)) {
    throw Error(ErrorCode::invalid_argument,
                "exterior mass must be positive; use make_schwarzschild_family for m <= 0", m);
  }
  return make_schwarzschild_family(m, r_lo, r_hi);
}

RadialProfile make_schwarzschild_family(double m, double r_lo, double r_hi) {
  if (!std::isfinite(m)) throw Error(ErrorCode::invalid_argument, "mass must be finite");
  require_schwarzschild_domain(m, r_lo, r_hi);
  return wrap(ProfileKind::schwarzschild_exterior, {r_lo, r_hi}, SchwarzschildModel{m});
}

RadialProfile make_schwarzschild_neck(double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw Error(ErrorCode::invalid_argument, "neck mass must be positive", mu);
  return wrap(ProfileKind::schwarzschild_neck, {2.0 * mu, 3.0 * mu}, NeckModel{mu});
}

RadialProfile make_neck_section(double mu, double r_top) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw Error(ErrorCode::invalid_argument, "neck mass must be positive", mu);
  require_interval(2.0 * mu, r_top);
  return wrap(ProfileKind::schwarzschild_neck, {2.0 * mu, r_top}, NeckModel{mu});
}

RadialProfile make_interior_fluid(double m, double r_body) {
  if (!(m > 0.0) || !(r_body > 0.0) || !std::isfinite(m) || !std::isfinite(r_body)) {
    throw Error(ErrorCode::invalid_argument, "fluid ball needs m > 0 and R_b > 0");
  }
  const double ratio = 2.0 * m / r_body;
  if (!(ratio < 8.0 / 9.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "Buchdahl condition violated: 2m/R_b = " << ratio << " is not < 8/9";
    throw Error(ErrorCode::buchdahl_violation, os.str(), ratio);
  }
  return wrap(ProfileKind::interior_fluid, {0.0, r_body}, FluidModel{m, r_body});
}

RadialProfile make_star(double m, double r_body, double r_hi) {
  RadialProfile interior = make_interior_fluid(m, r_body);
  if (!(r_hi > r_body)) throw Error(ErrorCode::domain_violation, "star exterior must extend past R_b");
  RadialProfile exterior = make_schwarzschild_exterior(m, r_body, r_hi);
  return wrap(ProfileKind::composite_reference, {0.0, r_hi}, PiecewiseModel{{interior, exterior}});
}

RadialProfile make_tabulated(std::span<const double> r, std::span<const double> N, std::span<const double> A,
                             std::span<const double> R) {
  if (r.size() != N.size() || r.size() != A.size() || r.size() != R.size()) {
    throw Error(ErrorCode::invalid_argument, "tabulated arrays must have equal length");
  }
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!std::isfinite(r[i]) || !std::isfinite(N[i]) || !std::isfinite(A[i]) || !std::isfinite(R[i])) {
      throw Error(ErrorCode::invalid_argument, "tabulated data must be finite");
    }
    if (!(A[i] > 0.0) || !(R[i] > 0.0) || N[i] < 0.0) {
      throw Error(ErrorCode::invalid_argument, "tabulated data needs A > 0, R > 0, N >= 0 at every node");
    }
  }
  TabulatedModel t{CubicSpline(r, N), CubicSpline(r, A), CubicSpline(r, R)};
  return wrap(ProfileKind::tabulated, {r.front(), r.back()}, std::move(t));
}

RadialProfile make_fermat(const RadialProfile& base) {
  return wrap(ProfileKind::composite_reference, base.domain(),
              TransformModel{base, TransformModel::Rule::fermat});
}

RadialProfile make_collar_conformal(const RadialProfile& base, int psi_sign, double psi_scale, double u_offset,
                                    double u_quadratic) {
  if (psi_sign != 1 && psi_sign != -1) throw Error(ErrorCode::invalid_argument, "psi sign must be +1 or -1");
  return wrap(ProfileKind::composite_reference, base.domain(),
              TransformModel{base, TransformModel::Rule::collar_conformal, psi_sign, psi_scale, u_offset,
                             u_quadratic});
}

FluidSource fluid_source(double m, double r_body, double r) {
  if (r < 0.0 || r > r_body) return {};
  const double rho = 3.0 * m / (4.0 * M_PI * r_body * r_body * r_body);
  const double outer = std::sqrt(1.0 - 2.0 * m / r_body);
  const double inner = std::sqrt(1.0 - 2.0 * m * r * r / (r_body * r_body * r_body));
  return {rho, rho * (inner - outer) / (3.0 * outer - inner)};
}

}  // namespace psu
