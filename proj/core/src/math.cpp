#include "mces/math.hpp"

#include <numbers>

namespace mces {
namespace {

// a reduced to [0, 2)
double reduce_two(double a) {
  double r = std::fmod(a, 2.0);
  if (r < 0.0) r += 2.0;
  return r;
}

}  // namespace

double sin_pi(double a) {
  const double r = reduce_two(a);
  if (r == 0.0 || r == 1.0) return 0.0;
  if (r == 0.5) return 1.0;
  if (r == 1.5) return -1.0;
  return std::sin(std::numbers::pi * r);
}

double cos_pi(double a) {
  const double r = reduce_two(a);
  if (r == 0.5 || r == 1.5) return 0.0;
  if (r == 0.0) return 1.0;
  if (r == 1.0) return -1.0;
  return std::cos(std::numbers::pi * r);
}

}  // namespace mces
