#pragma once

#include <boost/multiprecision/float128.hpp>

namespace psu {

// IEEE binary128. Used where double rounding would swamp the quantity being
// measured: nested finite differences and the unstable circular photon orbit.
using Quad = boost::multiprecision::float128;

template <class T>
inline double to_double(const T& x) {
  return static_cast<double>(x);
}

}  // namespace psu
