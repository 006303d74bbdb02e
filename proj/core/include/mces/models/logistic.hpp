#pragma once

#include "mces/models/target_model.hpp"

namespace mces {

/// Bayesian logistic regression with a standard normal prior on the
/// coefficients:
///   U(beta) = 0.5 |beta|^2 + sum_i [softplus(z_i) - y_i z_i],  z = X beta.
/// The design matrix already carries the intercept column.
class LogisticRegressionModel final : public TargetModel {
 public:
  LogisticRegressionModel(Eigen::MatrixXd design, Eigen::VectorXd labels);

  Eigen::Index dim() const override { return design_.cols(); }
  std::string name() const override { return "logistic_regression"; }

  const Eigen::MatrixXd& design() const { return design_; }
  const Eigen::VectorXd& labels() const { return labels_; }

 protected:
  double potential_impl(const Eigen::VectorXd& beta) const override;
  void gradient_impl(const Eigen::VectorXd& beta, Eigen::VectorXd& out) const override;

 private:
  Eigen::MatrixXd design_;
  Eigen::VectorXd labels_;
};

}  // namespace mces
