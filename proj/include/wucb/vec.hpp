#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace wucb {

using Vec = std::vector<double>;

inline double dot(const Vec& a, const Vec& b) {
  double acc = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
  return acc;
}

inline double l1_norm(const Vec& a) {
  double acc = 0.0;
  for (double v : a) acc += std::abs(v);
  return acc;
}

inline double max_abs_diff(const Vec& a, const Vec& b) {
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

}  // namespace wucb
