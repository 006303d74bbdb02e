#include "mces/models/lgcp.hpp"

#include <cmath>

#include "mces/error.hpp"

namespace mces {

LGCPParams LGCPParams::reference(int d) {
  LGCPParams p;
  p.d = d;
  p.alpha = 1.91;
  p.beta = 1.0 / 33.0;
  p.mu = std::log(126.0) - p.alpha / 2.0;
  p.s = 1.0 / (static_cast<double>(d) * d);
  return p;
}

Eigen::MatrixXd lgcp_prior_covariance(const LGCPParams& params) {
  require(params.d >= 1, "lgcp_prior_covariance: d must be positive");
  require(params.alpha > 0.0 && params.beta > 0.0,
          "lgcp_prior_covariance: alpha and beta must be positive");
  const int d = params.d;
  const Eigen::Index n = static_cast<Eigen::Index>(d) * d;
  const double length = params.beta * d;
  Eigen::MatrixXd cov(n, n);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const Eigen::Index a = static_cast<Eigen::Index>(i) * d + j;
      for (int ii = 0; ii < d; ++ii) {
        for (int jj = 0; jj < d; ++jj) {
          const Eigen::Index b = static_cast<Eigen::Index>(ii) * d + jj;
          const double delta = std::hypot(double(i - ii), double(j - jj));
          cov(a, b) = params.alpha * std::exp(-delta / length);
        }
      }
    }
  }
  return cov;
}

LGCPModel::LGCPModel(LGCPParams params, const Eigen::MatrixXd& counts)
    : params_(params), covariance_(lgcp_prior_covariance(params)) {
  require(params_.s > 0.0, "LGCPModel: s must be positive");
  require(counts.rows() == params_.d && counts.cols() == params_.d,
          "LGCPModel: counts must be d x d");
  counts_.resize(dim());
  for (int i = 0; i < params_.d; ++i) {
    for (int j = 0; j < params_.d; ++j) {
      const double c = counts(i, j);
      require(c >= 0.0 && c == std::floor(c),
              "LGCPModel: counts must be non-negative integers");
      counts_[static_cast<Eigen::Index>(i) * params_.d + j] = c;
    }
  }
  factor_.compute(covariance_);
  if (factor_.info() != Eigen::Success) {
    throw NumericalError("LGCPModel: prior covariance is not positive definite");
  }
}

double LGCPModel::potential_impl(const Eigen::VectorXd& x) const {
  const Eigen::VectorXd r = x.array() - params_.mu;
  const Eigen::VectorXd w = factor_.matrixL().solve(r);
  const double likelihood =
      (params_.s * x.array().exp() - counts_.array() * x.array()).sum();
  return 0.5 * w.squaredNorm() + likelihood;
}

void LGCPModel::gradient_impl(const Eigen::VectorXd& x, Eigen::VectorXd& out) const {
  out = factor_.solve((x.array() - params_.mu).matrix());
  out.array() += params_.s * x.array().exp() - counts_.array();
}

}  // namespace mces
