#pragma once

#include "mces/models/target_model.hpp"

namespace mces {

/// Log-Gaussian Cox process on a d x d grid.
///
///   x ~ N(mu 1, Sigma),  Sigma[(i,j),(i',j')] = alpha exp(-delta / (beta d)),
///   y_ij ~ Poisson(s exp(x_ij)),
/// with delta the Euclidean distance between cells. Cell (i, j) maps to flat
/// index i * d + j.
struct LGCPParams {
  double alpha = 1.91;
  double beta = 1.0 / 33.0;
  double mu = 0.0;
  double s = 0.0;
  int d = 32;

  /// alpha = 1.91, beta = 1/33, mu = log 126 - alpha / 2, s = 1 / d^2.
  static LGCPParams reference(int d = 32);
};

Eigen::MatrixXd lgcp_prior_covariance(const LGCPParams& params);

class LGCPModel final : public TargetModel {
 public:
  /// counts is d x d with non-negative integer entries.
  LGCPModel(LGCPParams params, const Eigen::MatrixXd& counts);

  Eigen::Index dim() const override { return static_cast<Eigen::Index>(params_.d) * params_.d; }
  std::string name() const override { return "lgcp"; }

  const LGCPParams& params() const { return params_; }
  const Eigen::MatrixXd& prior_covariance() const { return covariance_; }
  /// Counts flattened in cell order.
  const Eigen::VectorXd& counts() const { return counts_; }

 protected:
  double potential_impl(const Eigen::VectorXd& x) const override;
  void gradient_impl(const Eigen::VectorXd& x, Eigen::VectorXd& out) const override;

 private:
  LGCPParams params_;
  Eigen::MatrixXd covariance_;
  Eigen::LLT<Eigen::MatrixXd> factor_;
  Eigen::VectorXd counts_;
};

}  // namespace mces
