#include "mces/running_covariance.hpp"

#include "mces/error.hpp"

namespace mces {

RunningCovariance::RunningCovariance(Eigen::Index dim)
    : mean_(Eigen::VectorXd::Zero(dim)), scatter_(Eigen::MatrixXd::Zero(dim, dim)) {
  require(dim >= 1, "RunningCovariance: dimension must be >= 1");
}

void RunningCovariance::add(const Eigen::VectorXd& sample) {
  require_dim(static_cast<std::size_t>(dim()), static_cast<std::size_t>(sample.size()),
              "RunningCovariance::add");
  require(sample.allFinite(), "RunningCovariance::add: sample not finite");
  ++count_;
  const Eigen::VectorXd before = sample - mean_;
  mean_ += before / static_cast<double>(count_);
  const Eigen::VectorXd after = sample - mean_;
  scatter_.noalias() += before * after.transpose();
}

void RunningCovariance::add_rows(const Eigen::MatrixXd& batch) {
  for (Eigen::Index r = 0; r < batch.rows(); ++r) add(batch.row(r).transpose());
}

Eigen::MatrixXd RunningCovariance::covariance() const {
  if (count_ < 2) return Eigen::MatrixXd::Zero(dim(), dim());
  Eigen::MatrixXd c = scatter_ / static_cast<double>(count_ - 1);
  return 0.5 * (c + c.transpose());
}

double RunningCovariance::regularization() const {
  return 1e-6 * (covariance().trace() / static_cast<double>(dim()) + 1.0);
}

Eigen::MatrixXd RunningCovariance::regularized_covariance() const {
  Eigen::MatrixXd c = covariance();
  c.diagonal().array() += regularization();
  return c;
}

RunningCovariance update_covariance(RunningCovariance rc, const Eigen::MatrixXd& batch) {
  rc.add_rows(batch);
  return rc;
}

}  // namespace mces
