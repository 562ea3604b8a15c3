#pragma once

#include <cstddef>
#include <vector>

namespace mdde::detail {

struct Plateau {
  std::size_t first;
  std::size_t last;
};

// Local maxima of a sampled signal. A run of equal samples that is strictly
// higher than the samples on both sides counts as one maximum. With
// sign = -1 the same scan returns local minima.
inline std::vector<Plateau> local_maxima(const std::vector<double>& v, double sign = 1.0) {
  std::vector<Plateau> out;
  std::size_t k = 1;
  while (k + 1 < v.size()) {
    if (!(sign * v[k] > sign * v[k - 1])) {
      ++k;
      continue;
    }
    std::size_t j = k;
    while (j + 1 < v.size() && v[j + 1] == v[k]) ++j;
    if (j + 1 < v.size() && sign * v[j + 1] < sign * v[k]) out.push_back({k, j});
    k = j + 1;
  }
  return out;
}

}  // namespace mdde::detail
