#pragma once

#include <optional>

#include <Eigen/Dense>

#include "mces/hamiltonian.hpp"
#include "mces/models/gaussian.hpp"
#include "mces/random.hpp"

namespace mces {

/// Relative Frobenius tolerance for the M Sigma = Sigma M check.
inline constexpr double kCommutationTolerance = 1e-8;

bool commutes(const Eigen::MatrixXd& mass, const Eigen::MatrixXd& covariance,
              double tolerance = kCommutationTolerance);

/// Eigen-structure of A = M^{-1} Sigma^{-1} for a Gaussian target.
///
/// Computed from the symmetric similarity transform L^{-1} Sigma^{-1} L^{-T}
/// (M = L L^T) so the eigenvalues are real and positive; the eigenvectors of
/// A are V = L^{-T} W and satisfy V^T M V = I.
class SpectralSystem {
 public:
  /// Throws ContractViolation unless M and Sigma commute.
  SpectralSystem(const GaussianTarget& target, const MassMatrix& mass);

  Eigen::Index dim() const { return eigenvalues_.size(); }
  const Eigen::MatrixXd& a() const { return a_; }
  const Eigen::MatrixXd& eigenvectors() const { return v_; }
  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

  /// Exact solution of the Hamiltonian flow after time t >= 0.
  PhasePoint flow(const PhasePoint& start, double t) const;

  /// Cov(x_T | x_0) for p_0 ~ N(0, M).
  Eigen::MatrixXd conditional_covariance(double t) const;

  /// log det Cov(x_T | x_0); nullopt when the proposal is degenerate
  /// (some sin(sqrt(lambda_i) T) is exactly zero).
  std::optional<double> log_det_conditional_cov(double t) const;

 private:
  Eigen::VectorXd mean_;
  Eigen::MatrixXd a_;
  Eigen::MatrixXd chol_;  // lower factor L of M
  Eigen::MatrixXd w_;     // orthonormal eigenvectors of L^{-1} Sigma^{-1} L^{-T}
  Eigen::MatrixXd v_;     // L^{-T} W
  Eigen::VectorXd eigenvalues_;
  Eigen::VectorXd frequencies_;
  double log_det_covariance_ = 0.0;
};

PhasePoint analytic_flow(const GaussianTarget& target, const MassMatrix& mass,
                         const PhasePoint& start, double t);

Eigen::MatrixXd conditional_covariance(const GaussianTarget& target,
                                       const MassMatrix& mass, double t);

std::optional<double> log_det_conditional_cov(const GaussianTarget& target,
                                              const MassMatrix& mass, double t);

// One-dimensional target N(0, k) with kinetic energy p^2 / (2 m).

/// pi/2 sqrt(k m): the smallest time maximizing the conditional entropy.
double optimal_time_ce(double k, double m);

/// pi sqrt(k m): the smallest time maximizing the expected squared jump.
double optimal_time_esjd(double k, double m);

struct ConditionalLaw1D {
  double mean = 0.0;
  double variance = 0.0;
};

/// Law of x_T given x_0: N(x0 cos(wT), k sin^2(wT)) with w = 1/sqrt(k m).
ConditionalLaw1D conditional_law_1d(double k, double m, double t, double x0);

/// E|x_T - x_0|^2 = 2k (1 - cos(wT)) with x_0 ~ N(0, k).
double esjd_1d(double k, double m, double t);

/// Exact 1-D flow; angles that are integer or half-integer multiples of pi
/// are evaluated exactly.
PhasePoint flow_1d(double k, double m, double x0, double p0, double t);

/// Random SPD covariance and a mass matrix sharing its eigenbasis. The
/// covariance eigenvalues are drawn log-uniformly on [0.1, 10].
struct CommutingPair {
  Eigen::MatrixXd covariance;
  Eigen::MatrixXd mass;
};
CommutingPair random_commuting_pair(Eigen::Index n, Rng& rng);

}  // namespace mces
