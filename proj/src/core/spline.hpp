#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "jet.hpp"

namespace psu {

// C2 piecewise-cubic interpolant with not-a-knot end conditions. Coefficients
// are stored in double; evaluation is templated so the same piecewise
// polynomial can be evaluated in extended precision.
class CubicSpline {
 public:
  CubicSpline() = default;
  CubicSpline(std::span<const double> x, std::span<const double> y);

  std::size_t size() const { return x_.size(); }
  const std::vector<double>& nodes() const { return x_; }
  const std::vector<double>& values() const { return y_; }

  std::size_t interval(double x) const;

  template <class T>
  Jet2<T> eval(const T& x) const {
    const std::size_t k = interval(static_cast<double>(x));
    const T t = x - T(x_[k]);
    const T a(y_[k]), b(b_[k]), c(c_[k]), d(d_[k]);
    return {a + t * (b + t * (c + t * d)),
            b + t * (T(2) * c + T(3) * t * d),
            T(2) * c + T(6) * t * d};
  }

  // A-posteriori bounds on |f - s|, |f' - s'|, |f'' - s''| at x for a smooth f
  // sampled at the nodes. The fourth derivative of f is estimated from jumps
  // of s''' across neighbouring nodes.
  struct ErrorBound {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
  };
  ErrorBound error_bound(double x) const;

 private:
  std::vector<double> x_, y_, b_, c_, d_;
};

}  // namespace psu
