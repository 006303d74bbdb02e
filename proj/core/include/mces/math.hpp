#pragma once

#include <cmath>

namespace mces {

/// log(1 + exp(z)) without overflow; uses softplus(z) = z + softplus(-z) for z > 0.
inline double softplus(double z) {
  return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

inline double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

/// sin(pi * a) and cos(pi * a), exact at integer and half-integer a.
double sin_pi(double a);
double cos_pi(double a);

}  // namespace mces
