#pragma once

#include <cmath>

#include "mdde/types.hpp"

namespace mdde {

// e^{i phi}; exact (0, +-1) components at multiples of pi/2.
inline Complex unit(double phi) {
  const double quarter = phi / (kPi / 2.0);
  const double q = std::nearbyint(quarter);
  if (quarter == q) {
    switch ((static_cast<long long>(q) % 4 + 4) % 4) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  return {std::cos(phi), std::sin(phi)};
}

}  // namespace mdde
