#include "mces/hamiltonian.hpp"

#include <string>

#include "mces/error.hpp"

namespace mces {

MassMatrix::MassMatrix(Form form, Eigen::MatrixXd stored)
    : form_(form), stored_(std::move(stored)) {
  require(stored_.rows() > 0 && stored_.rows() == stored_.cols(),
          "MassMatrix: matrix must be square and non-empty");
  const double scale = stored_.cwiseAbs().maxCoeff();
  require((stored_ - stored_.transpose()).cwiseAbs().maxCoeff() <= 1e-10 * (1.0 + scale),
          "MassMatrix: matrix is not symmetric");
  factor_.compute(stored_);
  if (factor_.info() != Eigen::Success) {
    throw NumericalError("MassMatrix: Cholesky factorization failed");
  }
}

MassMatrix MassMatrix::identity(Eigen::Index n) {
  return MassMatrix(Form::kMass, Eigen::MatrixXd::Identity(n, n));
}

MassMatrix MassMatrix::from_matrix(const Eigen::MatrixXd& mass) {
  return MassMatrix(Form::kMass, mass);
}

MassMatrix MassMatrix::from_inverse(const Eigen::MatrixXd& inverse_mass) {
  return MassMatrix(Form::kInverse, inverse_mass);
}

Eigen::VectorXd MassMatrix::apply_inverse(const Eigen::VectorXd& p) const {
  require_dim(static_cast<std::size_t>(dim()), static_cast<std::size_t>(p.size()),
              "MassMatrix::apply_inverse");
  if (form_ == Form::kMass) return factor_.solve(p);
  return stored_ * p;
}

double MassMatrix::inverse_quadratic(const Eigen::VectorXd& p) const {
  require_dim(static_cast<std::size_t>(dim()), static_cast<std::size_t>(p.size()),
              "MassMatrix::inverse_quadratic");
  if (form_ == Form::kMass) return factor_.matrixL().solve(p).squaredNorm();
  return (factor_.matrixU() * p).squaredNorm();
}

Eigen::VectorXd MassMatrix::sample(Rng& rng) const {
  const Eigen::VectorXd z = standard_normal(dim(), rng);
  if (form_ == Form::kMass) return factor_.matrixL() * z;
  // M^{-1} = K K^T, so K^{-T} z has covariance (K K^T)^{-1} = M.
  return factor_.matrixU().solve(z);
}

Eigen::MatrixXd MassMatrix::matrix() const {
  if (form_ == Form::kMass) return stored_;
  return factor_.solve(Eigen::MatrixXd::Identity(dim(), dim()));
}

Eigen::MatrixXd MassMatrix::inverse() const {
  if (form_ == Form::kInverse) return stored_;
  return factor_.solve(Eigen::MatrixXd::Identity(dim(), dim()));
}

LeapfrogConfig LeapfrogConfig::from_time(double integration_time, int steps) {
  require(integration_time > 0.0, "LeapfrogConfig: integration time must be > 0");
  require(steps >= 1, "LeapfrogConfig: steps must be >= 1");
  return {integration_time / steps, steps};
}

double kinetic_energy(const Eigen::VectorXd& p, const MassMatrix& mass) {
  return 0.5 * mass.inverse_quadratic(p);
}

double total_energy(const PhasePoint& q, const TargetModel& model,
                    const MassMatrix& mass) {
  return model.potential(q.x) + kinetic_energy(q.p, mass);
}

Eigen::VectorXd sample_momentum(const MassMatrix& mass, Rng& rng) {
  return mass.sample(rng);
}

PhasePoint leapfrog(const Eigen::VectorXd& x0, const Eigen::VectorXd& p0,
                    const MassMatrix& mass, const TargetModel& model,
                    double epsilon, int steps) {
  require(epsilon > 0.0 && std::isfinite(epsilon), "leapfrog: epsilon must be > 0");
  require(steps >= 1, "leapfrog: steps must be >= 1");
  require_dim(static_cast<std::size_t>(model.dim()), static_cast<std::size_t>(x0.size()),
              "leapfrog position");
  require_dim(static_cast<std::size_t>(model.dim()), static_cast<std::size_t>(p0.size()),
              "leapfrog momentum");

  PhasePoint q{x0, p0};
  Eigen::VectorXd grad(x0.size());
  model.gradient(q.x, grad);
  const double half = 0.5 * epsilon;
  for (int step = 1; step <= steps; ++step) {
    q.p -= half * grad;
    q.x += epsilon * mass.apply_inverse(q.p);
    model.gradient(q.x, grad);
    q.p -= half * grad;
    if (!q.x.allFinite() || !q.p.allFinite()) {
      throw DivergenceError(static_cast<std::size_t>(step), "non-finite phase point");
    }
  }
  return q;
}

}  // namespace mces
