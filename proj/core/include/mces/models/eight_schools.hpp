#pragma once

#include <array>

#include "mces/models/target_model.hpp"

namespace mces {

struct EightSchoolsData {
  std::array<double, 8> y{};      // observed effects
  std::array<double, 8> sigma{};  // observation standard deviations, > 0
};

/// Constrained view of an unconstrained Eight Schools point.
struct EightSchoolsParameters {
  std::array<double, 8> theta{};
  double mu = 0.0;
  double tau = 0.0;
  double log_jacobian = 0.0;
};

/// mu = -15 + 30 sigmoid(u[8]), tau = 15 sigmoid(u[9]); theta = u[0..7].
/// log_jacobian is log|d(mu, tau)/d(u8, u9)|.
EightSchoolsParameters eight_schools_transform(const Eigen::VectorXd& u);

/// Hierarchical normal model
///   mu ~ U[-15, 15], tau ~ U[0, 15],
///   theta_i ~ N(mu, tau^2), y_i ~ N(theta_i, sigma_i^2),
/// sampled on (theta, logit-scaled mu, logit-scaled tau). tau and sigma_i are
/// standard deviations.
class EightSchoolsModel final : public TargetModel {
 public:
  static constexpr double kMuLow = -15.0;
  static constexpr double kMuHigh = 15.0;
  static constexpr double kTauHigh = 15.0;

  explicit EightSchoolsModel(EightSchoolsData data);

  Eigen::Index dim() const override { return 10; }
  std::string name() const override { return "eight_schools"; }
  const EightSchoolsData& data() const { return data_; }

 protected:
  double potential_impl(const Eigen::VectorXd& u) const override;
  void gradient_impl(const Eigen::VectorXd& u, Eigen::VectorXd& out) const override;

 private:
  EightSchoolsData data_;
};

}  // namespace mces
