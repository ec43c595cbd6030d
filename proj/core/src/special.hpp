#pragma once

#include <cmath>
#include <complex>

namespace ccm::detail {

// sin(x)/x, safe at 0.
template <class T>
T sinc(T x) {
  if (std::abs(x) < 1e-4) {
    const T x2 = x * x;
    return T(1.0) - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

// sinh(x)/x, safe at 0.
template <class T>
T sinhc(T x) {
  if (std::abs(x) < 1e-4) {
    const T x2 = x * x;
    return T(1.0) + x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sinh(x) / x;
}

}  // namespace ccm::detail
