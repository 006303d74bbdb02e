#pragma once

#include "mces/models/target_model.hpp"

namespace mces {

/// N(mean, covariance). The precision matrix is formed once at construction.
class GaussianTarget final : public TargetModel {
 public:
  GaussianTarget(Eigen::VectorXd mean, Eigen::MatrixXd covariance);

  /// Zero-mean target with the given covariance.
  static GaussianTarget centered(Eigen::MatrixXd covariance);

  Eigen::Index dim() const override { return mean_.size(); }
  std::string name() const override { return "gaussian"; }

  const Eigen::VectorXd& mean() const { return mean_; }
  const Eigen::MatrixXd& covariance() const { return covariance_; }
  const Eigen::MatrixXd& precision() const { return precision_; }

 protected:
  double potential_impl(const Eigen::VectorXd& x) const override;
  void gradient_impl(const Eigen::VectorXd& x, Eigen::VectorXd& out) const override;

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd covariance_;
  Eigen::MatrixXd precision_;
};

}  // namespace mces
