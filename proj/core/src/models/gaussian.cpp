#include "mces/models/gaussian.hpp"

#include "mces/error.hpp"

namespace mces {

GaussianTarget::GaussianTarget(Eigen::VectorXd mean, Eigen::MatrixXd covariance)
    : mean_(std::move(mean)), covariance_(std::move(covariance)) {
  require(mean_.size() > 0, "GaussianTarget: empty mean");
  require(covariance_.rows() == mean_.size() && covariance_.cols() == mean_.size(),
          "GaussianTarget: covariance shape does not match mean");
  const double scale = covariance_.cwiseAbs().maxCoeff();
  require((covariance_ - covariance_.transpose()).cwiseAbs().maxCoeff() <=
              1e-12 * (1.0 + scale),
          "GaussianTarget: covariance is not symmetric");
  Eigen::LLT<Eigen::MatrixXd> llt(covariance_);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("GaussianTarget: covariance is not positive definite");
  }
  precision_ = llt.solve(Eigen::MatrixXd::Identity(dim(), dim()));
  precision_ = 0.5 * (precision_ + precision_.transpose()).eval();
}

GaussianTarget GaussianTarget::centered(Eigen::MatrixXd covariance) {
  const Eigen::Index n = covariance.rows();
  return GaussianTarget(Eigen::VectorXd::Zero(n), std::move(covariance));
}

double GaussianTarget::potential_impl(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd r = x - mean_;
  return 0.5 * r.dot(precision_ * r);
}

void GaussianTarget::gradient_impl(const Eigen::VectorXd& x,
                                   Eigen::VectorXd& out) const {
  out.noalias() = precision_ * (x - mean_);
}

}  // namespace mces
