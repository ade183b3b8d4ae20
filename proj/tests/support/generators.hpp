#pragma once

// Small seeded generators for property tests. Every property runs a fixed
// number of cases from a fixed seed, so failures reproduce exactly; the case
// index and drawn values are reported through doctest INFO.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace gen {

class Source {
 public:
  explicit Source(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool coin() { return integer(0, 1) == 1; }

  template <class T>
  const T& pick(const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(integer(0, static_cast<int>(xs.size()) - 1))];
  }

 private:
  std::mt19937_64 rng_;
};

// Positive masses spread over three decades.
inline double mass(Source& s) { return s.log_uniform(0.1, 10.0); }

// A radius strictly inside (lo, hi), kept a relative margin away from both ends.
inline double radius(Source& s, double lo, double hi, double margin = 1e-3) {
  const double w = hi - lo;
  return s.uniform(lo + margin * w, hi - margin * w);
}

template <class Fn>
void for_all(std::uint64_t seed, int cases, Fn fn) {
  Source s(seed);
  for (int i = 0; i < cases; ++i) fn(s, i);
}

}  // namespace gen
