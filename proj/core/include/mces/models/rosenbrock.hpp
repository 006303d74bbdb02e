#pragma once

#include "mces/models/target_model.hpp"

namespace mces {

/// pi(x1, x2) proportional to exp(-x1^2 - 100 (x2 - b x1^2)^2).
/// b = 0 is exactly Gaussian with variances (1/2, 1/200); larger b bends the
/// density into a banana.
class RosenbrockTarget final : public TargetModel {
 public:
  static constexpr double kScale = 100.0;

  explicit RosenbrockTarget(double b);

  Eigen::Index dim() const override { return 2; }
  std::string name() const override { return "rosenbrock"; }
  double b() const { return b_; }

 protected:
  double potential_impl(const Eigen::VectorXd& x) const override;
  void gradient_impl(const Eigen::VectorXd& x, Eigen::VectorXd& out) const override;

 private:
  double b_;
};

}  // namespace mces
