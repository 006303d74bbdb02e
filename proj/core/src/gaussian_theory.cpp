#include "mces/gaussian_theory.hpp"

#include <cmath>
#include <numbers>

#include "mces/error.hpp"
#include "mces/math.hpp"

namespace mces {
namespace {

constexpr double kPi = std::numbers::pi;

void require_positive(double k, double m, const char* where) {
  require(k > 0.0 && m > 0.0 && std::isfinite(k) && std::isfinite(m),
          std::string(where) + ": k and m must be positive");
}

}  // namespace

bool commutes(const Eigen::MatrixXd& mass, const Eigen::MatrixXd& covariance,
              double tolerance) {
  const Eigen::MatrixXd ms = mass * covariance;
  const Eigen::MatrixXd sm = covariance * mass;
  return (ms - sm).norm() <= tolerance * ms.norm();
}

SpectralSystem::SpectralSystem(const GaussianTarget& target, const MassMatrix& mass) {
  require_dim(static_cast<std::size_t>(target.dim()), static_cast<std::size_t>(mass.dim()),
              "SpectralSystem");
  const Eigen::MatrixXd m = mass.matrix();
  if (!commutes(m, target.covariance())) {
    throw ContractViolation("SpectralSystem: mass matrix does not commute with covariance");
  }
  mean_ = target.mean();
  a_ = mass.inverse() * target.precision();

  Eigen::LLT<Eigen::MatrixXd> llt(m);
  if (llt.info() != Eigen::Success) throw NumericalError("SpectralSystem: M not SPD");
  chol_ = llt.matrixL();

  // B = L^{-1} Sigma^{-1} L^{-T}
  Eigen::MatrixXd b = llt.matrixL().solve(target.precision());
  b = llt.matrixL().solve(b.transpose()).transpose();
  b = 0.5 * (b + b.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(b);
  if (eig.info() != Eigen::Success) {
    throw NumericalError("SpectralSystem: eigendecomposition failed");
  }
  eigenvalues_ = eig.eigenvalues();
  if ((eigenvalues_.array() <= 0.0).any()) {
    throw NumericalError("SpectralSystem: non-positive eigenvalue");
  }
  w_ = eig.eigenvectors();
  v_ = llt.matrixU().solve(w_);
  frequencies_ = eigenvalues_.cwiseSqrt();

  Eigen::LLT<Eigen::MatrixXd> cov_llt(target.covariance());
  log_det_covariance_ =
      2.0 * cov_llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

PhasePoint SpectralSystem::flow(const PhasePoint& start, double t) const {
  require_dim(static_cast<std::size_t>(dim()), static_cast<std::size_t>(start.x.size()),
              "analytic_flow position");
  require_dim(static_cast<std::size_t>(dim()), static_cast<std::size_t>(start.p.size()),
              "analytic_flow momentum");
  require(t >= 0.0, "analytic_flow: t must be >= 0");
  // x0 - mean = V a, p0 = M V Omega b; V^{-1} = W^T L^T and L^T M^{-1} = L^{-1}.
  const Eigen::VectorXd a = w_.transpose() * (chol_.transpose() * (start.x - mean_));
  const Eigen::VectorXd lp =
      chol_.triangularView<Eigen::Lower>().solve(start.p);
  const Eigen::VectorXd b =
      (w_.transpose() * lp).cwiseQuotient(frequencies_);

  Eigen::VectorXd pos(dim());
  Eigen::VectorXd vel(dim());
  for (Eigen::Index i = 0; i < dim(); ++i) {
    const double turns = frequencies_[i] * t / kPi;
    const double c = cos_pi(turns);
    const double s = sin_pi(turns);
    pos[i] = a[i] * c + b[i] * s;
    vel[i] = frequencies_[i] * (-a[i] * s + b[i] * c);
  }
  // p = M V Omega (...) = L W Omega (...)
  return {mean_ + v_ * pos, chol_ * (w_ * vel)};
}

Eigen::MatrixXd SpectralSystem::conditional_covariance(double t) const {
  Eigen::VectorXd weights(dim());
  for (Eigen::Index i = 0; i < dim(); ++i) {
    const double s = sin_pi(frequencies_[i] * t / kPi);
    weights[i] = s * s / eigenvalues_[i];
  }
  Eigen::MatrixXd c = v_ * weights.asDiagonal() * v_.transpose();
  return 0.5 * (c + c.transpose());
}

std::optional<double> SpectralSystem::log_det_conditional_cov(double t) const {
  double total = log_det_covariance_;
  for (Eigen::Index i = 0; i < dim(); ++i) {
    const double s = sin_pi(frequencies_[i] * t / kPi);
    if (s == 0.0) return std::nullopt;
    total += std::log(s * s);  // log((1 - cos 2 w T) / 2)
  }
  return total;
}

PhasePoint analytic_flow(const GaussianTarget& target, const MassMatrix& mass,
                         const PhasePoint& start, double t) {
  return SpectralSystem(target, mass).flow(start, t);
}

Eigen::MatrixXd conditional_covariance(const GaussianTarget& target,
                                       const MassMatrix& mass, double t) {
  return SpectralSystem(target, mass).conditional_covariance(t);
}

std::optional<double> log_det_conditional_cov(const GaussianTarget& target,
                                              const MassMatrix& mass, double t) {
  return SpectralSystem(target, mass).log_det_conditional_cov(t);
}

double optimal_time_ce(double k, double m) {
  require_positive(k, m, "optimal_time_ce");
  return 0.5 * kPi * std::sqrt(k * m);
}

double optimal_time_esjd(double k, double m) {
  require_positive(k, m, "optimal_time_esjd");
  return kPi * std::sqrt(k * m);
}

ConditionalLaw1D conditional_law_1d(double k, double m, double t, double x0) {
  require_positive(k, m, "conditional_law_1d");
  const double turns = t / (kPi * std::sqrt(k * m));
  const double s = sin_pi(turns);
  return {x0 * cos_pi(turns), k * s * s};
}

double esjd_1d(double k, double m, double t) {
  require_positive(k, m, "esjd_1d");
  return 2.0 * k * (1.0 - cos_pi(t / (kPi * std::sqrt(k * m))));
}

PhasePoint flow_1d(double k, double m, double x0, double p0, double t) {
  require_positive(k, m, "flow_1d");
  const double turns = t / (kPi * std::sqrt(k * m));
  const double c = cos_pi(turns);
  const double s = sin_pi(turns);
  const double ratio = std::sqrt(k / m);
  Eigen::VectorXd x(1), p(1);
  x[0] = x0 * c + p0 * ratio * s;
  p[0] = -x0 * s / ratio + p0 * c;
  return {x, p};
}

CommutingPair random_commuting_pair(Eigen::Index n, Rng& rng) {
  require(n >= 1, "random_commuting_pair: n must be >= 1");
  const Eigen::MatrixXd g = standard_normal(n * n, rng).reshaped(n, n);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  const Eigen::MatrixXd q = qr.householderQ();
  std::uniform_real_distribution<double> log_scale(std::log(0.1), std::log(10.0));
  Eigen::VectorXd cov_eig(n), mass_eig(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    cov_eig[i] = std::exp(log_scale(rng));
    mass_eig[i] = std::exp(log_scale(rng));
  }
  CommutingPair pair;
  pair.covariance = q * cov_eig.asDiagonal() * q.transpose();
  pair.covariance = 0.5 * (pair.covariance + pair.covariance.transpose()).eval();
  pair.mass = q * mass_eig.asDiagonal() * q.transpose();
  pair.mass = 0.5 * (pair.mass + pair.mass.transpose()).eval();
  return pair;
}

}  // namespace mces
