#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace gmaos {

using Vector = std::vector<double>;

// Dense kernels used by the matrix-free solvers. All lengths must agree.

inline double dot(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline double norm2_squared(std::span<const double> a) { return dot(a, a); }

inline double norm2(std::span<const double> a) { return std::sqrt(norm2_squared(a)); }

inline double norm_inf(std::span<const double> a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

inline bool all_finite(std::span<const double> a) {
  return std::all_of(a.begin(), a.end(), [](double v) { return std::isfinite(v); });
}

// out = x + t * d
inline void step_along(std::span<const double> x, double t, std::span<const double> d,
                       std::span<double> out) {
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] + t * d[i];
}

// out = a - b
inline void difference(std::span<const double> a, std::span<const double> b,
                       std::span<double> out) {
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
}

}  // namespace gmaos
