#pragma once

#include <cmath>

namespace psu {

// Value with first and second derivative along one variable; closed-form
// profiles are built from these so derivatives are exact, never differenced.
template <class T>
struct Jet2 {
  T v{0};
  T d{0};
  T dd{0};

  static Jet2 variable(T x) { return {x, T(1), T(0)}; }
  static Jet2 constant(T c) { return {c, T(0), T(0)}; }

  Jet2& operator+=(const Jet2& o) { v += o.v; d += o.d; dd += o.dd; return *this; }
  Jet2& operator-=(const Jet2& o) { v -= o.v; d -= o.d; dd -= o.dd; return *this; }
};

template <class T> Jet2<T> operator-(const Jet2<T>& a) { return {-a.v, -a.d, -a.dd}; }
template <class T> Jet2<T> operator+(Jet2<T> a, const Jet2<T>& b) { return a += b; }
template <class T> Jet2<T> operator-(Jet2<T> a, const Jet2<T>& b) { return a -= b; }
template <class T> Jet2<T> operator+(Jet2<T> a, const T& c) { a.v += c; return a; }
template <class T> Jet2<T> operator+(const T& c, Jet2<T> a) { a.v += c; return a; }
template <class T> Jet2<T> operator-(Jet2<T> a, const T& c) { a.v -= c; return a; }
template <class T> Jet2<T> operator-(const T& c, const Jet2<T>& a) { return {c - a.v, -a.d, -a.dd}; }
template <class T> Jet2<T> operator*(const Jet2<T>& a, const T& c) { return {a.v * c, a.d * c, a.dd * c}; }
template <class T> Jet2<T> operator*(const T& c, const Jet2<T>& a) { return a * c; }
template <class T> Jet2<T> operator/(const Jet2<T>& a, const T& c) { return {a.v / c, a.d / c, a.dd / c}; }

template <class T>
Jet2<T> operator*(const Jet2<T>& a, const Jet2<T>& b) {
  return {a.v * b.v, a.d * b.v + a.v * b.d, a.dd * b.v + T(2) * a.d * b.d + a.v * b.dd};
}

template <class T>
Jet2<T> reciprocal(const Jet2<T>& a) {
  const T inv = T(1) / a.v;
  const T inv2 = inv * inv;
  return {inv, -a.d * inv2, (T(2) * a.d * a.d * inv - a.dd) * inv2};
}

template <class T>
Jet2<T> operator/(const Jet2<T>& a, const Jet2<T>& b) {
  return a * reciprocal(b);
}

template <class T>
Jet2<T> operator/(const T& c, const Jet2<T>& a) {
  return reciprocal(a) * c;
}

template <class T>
Jet2<T> sqrt(const Jet2<T>& a) {
  using std::sqrt;
  const T s = sqrt(a.v);
  const T ds = a.d / (T(2) * s);
  return {s, ds, (a.dd - T(2) * ds * ds) / (T(2) * s)};
}

template <class T>
Jet2<T> square(const Jet2<T>& a) {
  return a * a;
}

// Re-express derivatives along a new parameter t with dt/dx = w(x).
template <class T>
Jet2<T> reparametrize(const Jet2<T>& f, const Jet2<T>& w) {
  const T ft = f.d / w.v;
  return {f.v, ft, (f.dd - ft * w.d) / (w.v * w.v)};
}

}  // namespace psu
