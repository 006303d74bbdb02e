#include <benchmark/benchmark.h>

#include "mces/datasets.hpp"
#include "mces/diagnostics.hpp"
#include "mces/hamiltonian.hpp"
#include "mces/models/eight_schools.hpp"
#include "mces/models/gaussian.hpp"
#include "mces/models/lgcp.hpp"
#include "mces/random.hpp"
#include "mces/sampler.hpp"

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

void BM_LGCPGradient(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const auto params = mces::LGCPParams::reference(d);
  const mces::LGCPModel model(params, mces::generate_lgcp_data(params, 1).counts);
  mces::Rng rng = mces::make_rng(1);
  const VectorXd x = VectorXd::Constant(model.dim(), params.mu) + mces::standard_normal(model.dim(), rng);
  for (auto _ : state) benchmark::DoNotOptimize(model.gradient(x));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_LGCPGradient)->Arg(8)->Arg(16)->Arg(32);

void BM_GermanCreditGradient(benchmark::State& state) {
  const auto model = mces::load_german_credit(mces::default_data_dir() / "german.data-numeric");
  const VectorXd beta = VectorXd::Constant(model.dim(), 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(model.gradient(beta));
}
BENCHMARK(BM_GermanCreditGradient);

void BM_Leapfrog(benchmark::State& state) {
  const auto n = state.range(0);
  mces::Rng rng = mces::make_rng(2);
  const MatrixXd a = MatrixXd::Random(n, n);
  const MatrixXd cov = a * a.transpose() + MatrixXd::Identity(n, n);
  const auto target = mces::GaussianTarget::centered(cov);
  const auto mass = mces::MassMatrix::from_inverse(cov);
  const VectorXd x = mces::standard_normal(n, rng), p = mces::standard_normal(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(mces::leapfrog(x, p, mass, target, 0.05, 20));
  state.SetItemsProcessed(state.iterations() * 20);
}
BENCHMARK(BM_Leapfrog)->Arg(2)->Arg(25)->Arg(256);

void BM_EightSchoolsRun(benchmark::State& state) {
  const mces::EightSchoolsModel model(
      mces::load_eight_schools(mces::default_data_dir() / "eight_schools.csv"));
  mces::MCESConfig config;
  for (auto _ : state) {
    mces::Rng rng = mces::make_rng(3);
    benchmark::DoNotOptimize(mces::mces_run(model, config, VectorXd::Zero(10), rng));
  }
}
BENCHMARK(BM_EightSchoolsRun)->Unit(benchmark::kMillisecond);

void BM_ESS(benchmark::State& state) {
  mces::Rng rng = mces::make_rng(4);
  const auto n = state.range(0);
  VectorXd x(n);
  x[0] = 0.0;
  const VectorXd z = mces::standard_normal(n, rng);
  for (Eigen::Index i = 1; i < n; ++i) x[i] = 0.9 * x[i - 1] + z[i];
  for (auto _ : state) benchmark::DoNotOptimize(mces::ess(x));
}
BENCHMARK(BM_ESS)->Arg(1 << 12)->Arg(1 << 16)->Arg(1 << 20)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
