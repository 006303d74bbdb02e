#include "mces/models/rosenbrock.hpp"

#include <cmath>

#include "mces/error.hpp"

namespace mces {

RosenbrockTarget::RosenbrockTarget(double b) : b_(b) {
  require(std::isfinite(b) && b >= 0.0, "RosenbrockTarget: b must be >= 0");
}

double RosenbrockTarget::potential_impl(const Eigen::VectorXd& x) const {
  const double bend = x[1] - b_ * x[0] * x[0];
  return x[0] * x[0] + kScale * bend * bend;
}

void RosenbrockTarget::gradient_impl(const Eigen::VectorXd& x,
                                     Eigen::VectorXd& out) const {
  const double bend = x[1] - b_ * x[0] * x[0];
  out[0] = 2.0 * x[0] - 4.0 * kScale * b_ * x[0] * bend;
  out[1] = 2.0 * kScale * bend;
}

}  // namespace mces
