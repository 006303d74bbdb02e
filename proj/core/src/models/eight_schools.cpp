#include "mces/models/eight_schools.hpp"

#include <cmath>

#include "mces/error.hpp"
#include "mces/math.hpp"

namespace mces {
namespace {

// log sigmoid(z) + log(1 - sigmoid(z))
double log_sigmoid_pair(double z) { return -softplus(-z) - softplus(z); }

}  // namespace

EightSchoolsParameters eight_schools_transform(const Eigen::VectorXd& u) {
  require_dim(10, static_cast<std::size_t>(u.size()), "eight_schools_transform");
  EightSchoolsParameters p;
  for (int i = 0; i < 8; ++i) p.theta[i] = u[i];
  const double range_mu = EightSchoolsModel::kMuHigh - EightSchoolsModel::kMuLow;
  p.mu = EightSchoolsModel::kMuLow + range_mu * sigmoid(u[8]);
  p.tau = EightSchoolsModel::kTauHigh * sigmoid(u[9]);
  p.log_jacobian = std::log(range_mu) + log_sigmoid_pair(u[8]) +
                   std::log(EightSchoolsModel::kTauHigh) + log_sigmoid_pair(u[9]);
  return p;
}

EightSchoolsModel::EightSchoolsModel(EightSchoolsData data) : data_(data) {
  for (double s : data_.sigma) {
    require(std::isfinite(s) && s > 0.0, "EightSchoolsModel: sigma must be > 0");
  }
  for (double y : data_.y) require(std::isfinite(y), "EightSchoolsModel: y not finite");
}

double EightSchoolsModel::potential_impl(const Eigen::VectorXd& u) const {
  const EightSchoolsParameters p = eight_schools_transform(u);
  double U = 0.0;
  const double inv_tau2 = 1.0 / (p.tau * p.tau);
  for (int i = 0; i < 8; ++i) {
    const double resid = (data_.y[i] - p.theta[i]) / data_.sigma[i];
    const double dev = p.theta[i] - p.mu;
    U += 0.5 * resid * resid + 0.5 * dev * dev * inv_tau2;
  }
  U += 8.0 * (std::log(kTauHigh) - softplus(-u[9]));  // 8 log tau
  return U - p.log_jacobian;
}

void EightSchoolsModel::gradient_impl(const Eigen::VectorXd& u,
                                      Eigen::VectorXd& out) const {
  const EightSchoolsParameters p = eight_schools_transform(u);
  const double inv_tau2 = 1.0 / (p.tau * p.tau);
  double sum_dev = 0.0;
  double sum_dev2 = 0.0;
  for (int i = 0; i < 8; ++i) {
    const double dev = p.theta[i] - p.mu;
    const double s2 = data_.sigma[i] * data_.sigma[i];
    out[i] = (p.theta[i] - data_.y[i]) / s2 + dev * inv_tau2;
    sum_dev += dev;
    sum_dev2 += dev * dev;
  }
  const double sig_mu = sigmoid(u[8]);
  const double sig_tau = sigmoid(u[9]);
  const double dU_dmu = -sum_dev * inv_tau2;
  const double dU_dtau = 8.0 / p.tau - sum_dev2 * inv_tau2 / p.tau;
  const double dmu_du = (kMuHigh - kMuLow) * sig_mu * (1.0 - sig_mu);
  const double dtau_du = kTauHigh * sig_tau * (1.0 - sig_tau);
  // d/du [log sigmoid(u) + log(1 - sigmoid(u))] = 1 - 2 sigmoid(u)
  out[8] = dU_dmu * dmu_du - (1.0 - 2.0 * sig_mu);
  out[9] = dU_dtau * dtau_du - (1.0 - 2.0 * sig_tau);
}

}  // namespace mces
