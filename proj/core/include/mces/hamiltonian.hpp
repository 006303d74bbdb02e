#pragma once

#include <Eigen/Dense>

#include "mces/models/target_model.hpp"
#include "mces/random.hpp"

namespace mces {

struct PhasePoint {
  Eigen::VectorXd x;  // position
  Eigen::VectorXd p;  // momentum
};

/// Momentum covariance M of the kinetic energy K(p) = 0.5 p^T M^{-1} p.
///
/// Either M or M^{-1} is stored together with its Cholesky factor, whichever
/// the caller had in hand; an adapted sampler builds it from a covariance
/// estimate (= M^{-1}) and never forms the inverse. Immutable after
/// construction.
class MassMatrix {
 public:
  static MassMatrix identity(Eigen::Index n);
  static MassMatrix from_matrix(const Eigen::MatrixXd& mass);
  static MassMatrix from_inverse(const Eigen::MatrixXd& inverse_mass);

  Eigen::Index dim() const { return stored_.rows(); }

  /// M^{-1} p
  Eigen::VectorXd apply_inverse(const Eigen::VectorXd& p) const;
  /// p^T M^{-1} p
  double inverse_quadratic(const Eigen::VectorXd& p) const;
  /// Draw p ~ N(0, M).
  Eigen::VectorXd sample(Rng& rng) const;

  Eigen::MatrixXd matrix() const;
  Eigen::MatrixXd inverse() const;

 private:
  enum class Form { kMass, kInverse };
  MassMatrix(Form form, Eigen::MatrixXd stored);

  Form form_;
  Eigen::MatrixXd stored_;
  Eigen::LLT<Eigen::MatrixXd> factor_;
};

struct LeapfrogConfig {
  double epsilon = 0.1;
  int steps = 1;

  /// epsilon = T / L.
  static LeapfrogConfig from_time(double integration_time, int steps);
};

double kinetic_energy(const Eigen::VectorXd& p, const MassMatrix& mass);

/// H = U(x) + K(p).
double total_energy(const PhasePoint& q, const TargetModel& model,
                    const MassMatrix& mass);

Eigen::VectorXd sample_momentum(const MassMatrix& mass, Rng& rng);

/// Stormer-Verlet integration of dx/dt = M^{-1} p, dp/dt = -grad U(x) for
/// `steps` steps of size `epsilon`, each step consuming the previous one's
/// output. Throws DivergenceError if the state becomes non-finite.
PhasePoint leapfrog(const Eigen::VectorXd& x0, const Eigen::VectorXd& p0,
                    const MassMatrix& mass, const TargetModel& model,
                    double epsilon, int steps);

inline PhasePoint leapfrog(const PhasePoint& start, const MassMatrix& mass,
                           const TargetModel& model, const LeapfrogConfig& cfg) {
  return leapfrog(start.x, start.p, mass, model, cfg.epsilon, cfg.steps);
}

}  // namespace mces
