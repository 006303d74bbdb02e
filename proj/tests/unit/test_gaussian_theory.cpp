#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"

#include "mces/error.hpp"
#include "mces/gaussian_theory.hpp"
#include "mces/random.hpp"

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

constexpr double kPi = std::numbers::pi;

mces::GaussianTarget identity_target(Eigen::Index n) {
  return mces::GaussianTarget::centered(MatrixXd::Identity(n, n));
}

}  // namespace

TEST_CASE("commutation check") {
  const MatrixXd s{{2.0, 0.0}, {0.0, 1.0}};
  CHECK(mces::commutes(MatrixXd{{3.0, 0.0}, {0.0, 5.0}}, s));
  CHECK_FALSE(mces::commutes(MatrixXd{{1.0, 0.5}, {0.5, 1.0}}, s));
  const auto target = mces::GaussianTarget::centered(s);
  CHECK_THROWS_AS(mces::SpectralSystem(target, mces::MassMatrix::from_matrix(MatrixXd{{1.0, 0.5}, {0.5, 1.0}})),
                  mces::ContractViolation);
}

TEST_CASE("spectral system eigenpairs") {
  mces::Rng rng = mces::make_rng(20);
  for (int n = 1; n <= 5; ++n) {
    const auto pair = mces::random_commuting_pair(n, rng);
    const auto target = mces::GaussianTarget::centered(pair.covariance);
    const mces::SpectralSystem sys(target, mces::MassMatrix::from_matrix(pair.mass));
    const MatrixXd a = pair.mass.inverse() * pair.covariance.inverse();
    CHECK((sys.a() - a).cwiseAbs().maxCoeff() < 1e-8 * (1 + a.cwiseAbs().maxCoeff()));
    CHECK((a * sys.eigenvectors() - sys.eigenvectors() * sys.eigenvalues().asDiagonal())
              .cwiseAbs()
              .maxCoeff() < 1e-8);
    CHECK(sys.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("analytic flow") {
  const auto g = identity_target(1);
  const auto id = mces::MassMatrix::identity(1);
  const mces::PhasePoint start{VectorXd::Ones(1), VectorXd::Zero(1)};
  const auto half = mces::analytic_flow(g, id, start, kPi);
  CHECK(half.x[0] == -1.0);
  CHECK(half.p[0] == 0.0);
  const auto same = mces::analytic_flow(g, id, {VectorXd::Constant(1, 0.3), VectorXd::Constant(1, -2.0)}, 0.0);
  CHECK(same.x[0] == 0.3);
  CHECK(same.p[0] == -2.0);

  mces::Rng rng = mces::make_rng(21);
  for (int k = 0; k < 5; ++k) {
    const auto pair = mces::random_commuting_pair(4, rng);
    const auto target = mces::GaussianTarget::centered(pair.covariance);
    const auto mass = mces::MassMatrix::from_matrix(pair.mass);
    const mces::PhasePoint q{mces::standard_normal(4, rng), mass.sample(rng)};
    const auto exact = mces::analytic_flow(target, mass, q, 0.7);
    const auto fine = mces::leapfrog(q.x, q.p, mass, target, 1e-4, 7000);
    CHECK((exact.x - fine.x).norm() < 1e-6);
    CHECK(std::abs(mces::total_energy(exact, target, mass) - mces::total_energy(q, target, mass)) < 1e-10);
  }
}

TEST_CASE("analytic flow with a nonzero mean") {
  const MatrixXd cov{{2.0, 0.0}, {0.0, 0.5}};
  const mces::GaussianTarget target(VectorXd{{3.0, -1.0}}, cov);
  const auto mass = mces::MassMatrix::from_matrix(MatrixXd{{0.7, 0.0}, {0.0, 1.9}});
  const mces::PhasePoint q{VectorXd{{2.0, 0.0}}, VectorXd{{0.4, -0.2}}};
  const auto exact = mces::analytic_flow(target, mass, q, 1.3);
  const auto fine = mces::leapfrog(q.x, q.p, mass, target, 1e-4, 13000);
  CHECK((exact.x - fine.x).norm() < 1e-6);
  CHECK((exact.p - fine.p).norm() < 1e-6);
}

TEST_CASE("conditional covariance closed form") {
  const auto g = identity_target(3);
  const auto id = mces::MassMatrix::identity(3);
  CHECK((mces::conditional_covariance(g, id, kPi / 2) - MatrixXd::Identity(3, 3)).norm() < 1e-14);
  CHECK(mces::conditional_covariance(g, id, kPi).norm() == 0.0);

  mces::Rng rng = mces::make_rng(22);
  for (int n = 1; n <= 5; ++n) {
    const auto pair = mces::random_commuting_pair(n, rng);
    const auto target = mces::GaussianTarget::centered(pair.covariance);
    const auto opt = mces::MassMatrix::from_inverse(pair.covariance);
    CHECK((mces::conditional_covariance(target, opt, kPi / 2) - pair.covariance).cwiseAbs().maxCoeff() < 1e-8);
    const MatrixXd c = mces::conditional_covariance(target, mces::MassMatrix::from_matrix(pair.mass), 1.1);
    CHECK((c - c.transpose()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(Eigen::SelfAdjointEigenSolver<MatrixXd>(c).eigenvalues().minCoeff() > -1e-10);
  }
}

TEST_CASE("conditional covariance against Monte Carlo endpoints") {
  mces::Rng rng = mces::make_rng(23);
  const auto pair = mces::random_commuting_pair(3, rng);
  const auto target = mces::GaussianTarget::centered(pair.covariance);
  const auto mass = mces::MassMatrix::from_matrix(pair.mass);
  const VectorXd x0 = mces::standard_normal(3, rng);
  const int n = 100000;
  MatrixXd ends(n, 3);
  for (int i = 0; i < n; ++i) {
    ends.row(i) = mces::analytic_flow(target, mass, {x0, mass.sample(rng)}, 1.0).x.transpose();
  }
  const MatrixXd want = mces::conditional_covariance(target, mass, 1.0);
  const MatrixXd got = oracle::sample_covariance(ends);
  CHECK((got - want).norm() / want.norm() < 0.05);
  CHECK(((got - want).diagonal().array() / want.diagonal().array()).abs().maxCoeff() < 0.05);
}

TEST_CASE("log det objective") {
  const auto g = identity_target(2);
  const auto id = mces::MassMatrix::identity(2);
  REQUIRE(mces::log_det_conditional_cov(g, id, kPi / 2).has_value());
  CHECK(std::abs(*mces::log_det_conditional_cov(g, id, kPi / 2)) < 1e-14);
  CHECK_FALSE(mces::log_det_conditional_cov(g, id, kPi).has_value());
  for (double t : {0.3, 1.0, 2.2}) {
    CHECK(*mces::log_det_conditional_cov(g, id, t) ==
          doctest::Approx(*mces::log_det_conditional_cov(g, id, t + 2 * kPi)).epsilon(1e-9));
  }

  const MatrixXd cov{{1.0, 0.0}, {0.0, 4.0}};
  const auto target = mces::GaussianTarget::centered(cov);
  const auto opt = mces::MassMatrix::from_inverse(cov);
  const int grid = 2000;
  double best = -1e300, best_t = 0.0;
  for (int k = 1; k <= grid; ++k) {
    const double t = kPi * k / grid;
    const auto v = mces::log_det_conditional_cov(target, opt, t);
    if (v && *v > best) {
      best = *v;
      best_t = t;
    }
  }
  CHECK(std::abs(best_t - kPi / 2) <= kPi / grid);
  CHECK(best == doctest::Approx(std::log(4.0)));

  // matches log det of the closed-form covariance
  mces::Rng rng = mces::make_rng(24);
  const auto pair = mces::random_commuting_pair(4, rng);
  const auto t4 = mces::GaussianTarget::centered(pair.covariance);
  const auto m4 = mces::MassMatrix::from_matrix(pair.mass);
  const MatrixXd c = mces::conditional_covariance(t4, m4, 0.9);
  CHECK(*mces::log_det_conditional_cov(t4, m4, 0.9) == doctest::Approx(std::log(c.determinant())).epsilon(1e-8));
}

TEST_CASE("one dimensional optimal times") {
  CHECK(mces::optimal_time_ce(1, 1) == kPi / 2);
  CHECK(mces::optimal_time_esjd(1, 1) == kPi);
  CHECK(mces::optimal_time_ce(4, 1) == doctest::Approx(kPi));
  CHECK(mces::optimal_time_ce(1, 4) == doctest::Approx(kPi));
  CHECK(mces::optimal_time_esjd(0.25, 1) == doctest::Approx(kPi / 2));
  const auto flip = mces::flow_1d(1, 1, 1.0, 0.37, mces::optimal_time_esjd(1, 1));
  CHECK(flip.x[0] == -1.0);
}

TEST_CASE("one dimensional conditional law and jump distance") {
  auto law = mces::conditional_law_1d(1, 1, 0.0, 1.7);
  CHECK(law.mean == 1.7);
  CHECK(law.variance == 0.0);
  law = mces::conditional_law_1d(1, 1, kPi / 2, 1.0);
  CHECK(std::abs(law.mean) < 1e-15);
  CHECK(law.variance == doctest::Approx(1.0));
  law = mces::conditional_law_1d(1, 1, kPi / 4, 2.0);
  CHECK(law.mean == doctest::Approx(std::sqrt(2.0)));
  CHECK(law.variance == doctest::Approx(0.5));
  CHECK(mces::esjd_1d(1, 1, 0.0) == 0.0);
  CHECK(mces::esjd_1d(1, 1, kPi) == doctest::Approx(4.0));
  CHECK(mces::esjd_1d(1, 1, kPi / 2) == doctest::Approx(2.0));
  law = mces::conditional_law_1d(3.0, 0.5, mces::optimal_time_ce(3.0, 0.5), 5.0);
  CHECK(std::abs(law.mean) < 1e-12);
  CHECK(law.variance == doctest::Approx(3.0));
}

TEST_CASE("random commuting pairs") {
  mces::Rng rng = mces::make_rng(25);
  for (int n = 1; n <= 5; ++n) {
    const auto pair = mces::random_commuting_pair(n, rng);
    CHECK(mces::commutes(pair.mass, pair.covariance));
    const VectorXd ev = Eigen::SelfAdjointEigenSolver<MatrixXd>(pair.covariance).eigenvalues();
    CHECK(ev.minCoeff() >= 0.1 - 1e-9);
    CHECK(ev.maxCoeff() <= 10.0 + 1e-9);
  }
}
