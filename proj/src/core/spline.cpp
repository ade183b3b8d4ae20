#include "spline.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace psu {

CubicSpline::CubicSpline(std::span<const double> x, std::span<const double> y)
    : x_(x.begin(), x.end()), y_(y.begin(), y.end()) {
  const std::size_t n = x_.size();
  if (n < 4 || y_.size() != n) {
    throw Error(ErrorCode::invalid_argument, "spline needs at least 4 nodes and matching value count");
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (!(x_[i + 1] > x_[i])) {
      throw Error(ErrorCode::invalid_argument, "spline nodes must be strictly increasing");
    }
  }

  std::vector<double> h(n - 1), slope(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = x_[i + 1] - x_[i];
    slope[i] = (y_[i + 1] - y_[i]) / h[i];
  }

  // Unknowns: second derivatives M_1..M_{n-2}; M_0 and M_{n-1} eliminated with
  // the not-a-knot conditions (s''' continuous at x_1 and x_{n-2}).
  const std::size_t m = n - 2;
  std::vector<double> lower(m, 0.0), diag(m, 0.0), upper(m, 0.0), rhs(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    const std::size_t i = j + 1;
    lower[j] = h[i - 1];
    diag[j] = 2.0 * (h[i - 1] + h[i]);
    upper[j] = h[i];
    rhs[j] = 6.0 * (slope[i] - slope[i - 1]);
  }
  // M_0 = ((h0 + h1) M_1 - h0 M_2) / h1
  diag[0] += h[0] * (h[0] + h[1]) / h[1];
  upper[0] -= h[0] * h[0] / h[1];
  // M_{n-1} = ((h_{n-2} + h_{n-3}) M_{n-2} - h_{n-2} M_{n-3}) / h_{n-3}
  {
    const double hl = h[n - 2], hp = h[n - 3];
    diag[m - 1] += hl * (hl + hp) / hp;
    lower[m - 1] -= hl * hl / hp;
  }

  // Thomas algorithm.
  for (std::size_t j = 1; j < m; ++j) {
    const double w = lower[j] / diag[j - 1];
    diag[j] -= w * upper[j - 1];
    rhs[j] -= w * rhs[j - 1];
  }
  std::vector<double> M(n, 0.0);
  M[m] = rhs[m - 1] / diag[m - 1];
  for (std::size_t j = m - 1; j-- > 0;) {
    M[j + 1] = (rhs[j] - upper[j] * M[j + 2]) / diag[j];
  }
  M[0] = ((h[0] + h[1]) * M[1] - h[0] * M[2]) / h[1];
  M[n - 1] = ((h[n - 2] + h[n - 3]) * M[n - 2] - h[n - 2] * M[n - 3]) / h[n - 3];

  b_.resize(n - 1);
  c_.resize(n - 1);
  d_.resize(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    b_[i] = slope[i] - h[i] * (2.0 * M[i] + M[i + 1]) / 6.0;
    c_[i] = 0.5 * M[i];
    d_[i] = (M[i + 1] - M[i]) / (6.0 * h[i]);
  }
}

std::size_t CubicSpline::interval(double x) const {
  auto it = std::upper_bound(x_.begin(), x_.end(), x);
  if (it == x_.begin()) return 0;
  std::size_t k = static_cast<std::size_t>(it - x_.begin()) - 1;
  return std::min(k, x_.size() - 2);
}

CubicSpline::ErrorBound CubicSpline::error_bound(double x) const {
  const std::size_t k = interval(x);
  const std::size_t last = d_.size() - 1;
  // s''' = 6 d_i on interval i; its jump at node i divided by the local
  // spacing approximates f''''.
  double f4 = 0.0;
  const std::size_t lo = k > 2 ? k - 2 : 0;
  const std::size_t hi = std::min(k + 2, last);
  for (std::size_t i = std::max<std::size_t>(lo, 1); i <= hi; ++i) {
    const double spacing = 0.5 * (x_[i + 1] - x_[i - 1]);
    f4 = std::max(f4, std::abs(6.0 * (d_[i] - d_[i - 1])) / spacing);
  }
  f4 *= 2.0;  // safety factor for the difference estimate
  const double h = x_[k + 1] - x_[k];
  return {5.0 / 384.0 * std::pow(h, 4) * f4, std::pow(h, 3) / 24.0 * f4, 3.0 / 8.0 * h * h * f4};
}

}  // namespace psu
