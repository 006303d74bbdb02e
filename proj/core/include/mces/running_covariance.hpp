#pragma once

#include <Eigen/Dense>

namespace mces {

/// Streaming sample mean and unbiased (t - 1 divisor) covariance.
///
/// After folding any sequence of samples the state matches the covariance
/// recomputed from scratch over all of them. With fewer than two samples the
/// covariance is the zero matrix.
class RunningCovariance {
 public:
  explicit RunningCovariance(Eigen::Index dim);

  void add(const Eigen::VectorXd& sample);
  /// Folds every row of `batch`.
  void add_rows(const Eigen::MatrixXd& batch);

  Eigen::Index dim() const { return mean_.size(); }
  long count() const { return count_; }
  const Eigen::VectorXd& mean() const { return mean_; }
  Eigen::MatrixXd covariance() const;

  /// 1e-6 (trace(C) / n + 1), the diagonal floor added before inversion.
  double regularization() const;
  Eigen::MatrixXd regularized_covariance() const;

 private:
  long count_ = 0;
  Eigen::VectorXd mean_;
  Eigen::MatrixXd scatter_;  // sum of (x - mean_old)(x - mean_new)^T
};

RunningCovariance update_covariance(RunningCovariance rc, const Eigen::MatrixXd& batch);

}  // namespace mces
