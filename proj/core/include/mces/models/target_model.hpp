#pragma once

#include <string>

#include <Eigen/Dense>

namespace mces {

/// Unnormalized target pi(x) = exp(-U(x)) on an unconstrained space.
///
/// Implementations are immutable after construction, so one instance can be
/// shared by any number of concurrently running chains. The public entry
/// points check the input dimension and forward to the protected hooks.
class TargetModel {
 public:
  virtual ~TargetModel() = default;

  virtual Eigen::Index dim() const = 0;
  virtual std::string name() const = 0;

  /// U(x), up to an additive constant.
  double potential(const Eigen::VectorXd& x) const;

  /// Gradient of U at x.
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;
  void gradient(const Eigen::VectorXd& x, Eigen::VectorXd& out) const;

 protected:
  virtual double potential_impl(const Eigen::VectorXd& x) const = 0;
  virtual void gradient_impl(const Eigen::VectorXd& x,
                             Eigen::VectorXd& out) const = 0;
};

}  // namespace mces
