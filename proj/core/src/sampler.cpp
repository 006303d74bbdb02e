#include "mces/sampler.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "mces/error.hpp"

namespace mces {

void MCESConfig::validate() const {
  require(acc_min > 0.0 && acc_min < 1.0, "MCESConfig: Acc_min must lie in (0, 1)");
  require(n0 >= 2, "MCESConfig: N0 must be >= 2");
  require(n0 <= n_m && n_m <= n_max, "MCESConfig: need N0 <= N_M <= N_max");
  require(n_l >= 1, "MCESConfig: N_L must be >= 1");
  require(l0 >= 1 && l0 <= l_max, "MCESConfig: need 1 <= L0 <= L_max");
  require(rho > 1.0, "MCESConfig: rho must be > 1");
  require(i_max >= 1, "MCESConfig: I_max must be >= 1");
  require(integration_time > 0.0 && std::isfinite(integration_time),
          "MCESConfig: T must be positive");
  require(warmstart_steps >= 1, "MCESConfig: warmstart steps must be >= 1");
}

int grow_steps(int l_old, double rho, int l_max) {
  const long grown = std::lround(rho * l_old);
  return static_cast<int>(std::min<long>(std::max<long>(l_old + 1, grown), l_max));
}

StepSchedule StepSchedule::initial(const MCESConfig& config) {
  StepSchedule s;
  s.l = config.l0;
  s.l_old = config.l0;
  s.acc_old = 0.0;
  s.growing = true;
  s.stall_count = 0;
  return s;
}

void StepSchedule::update(double acceptance, const MCESConfig& config) {
  if (!growing) return;
  const double rate = acceptance / l;
  const bool qualified = config.literal_rollback || acc_old > config.acc_min;
  const double best = qualified ? acc_old / l_old : 0.0;
  auto advance = [&] {
    acc_old = acceptance;
    l_old = l;
    stall_count = 0;
    l = grow_steps(l_old, config.rho, config.l_max);
  };
  if (l == config.l_max) {
    growing = false;
    if (rate < best) l = l_old;
  } else if (acceptance > config.acc_min) {
    if (rate < best) {
      ++stall_count;
      if (stall_count >= config.i_max) {
        growing = false;
        l = l_old;
      }
    } else {
      advance();
    }
  } else {
    advance();
  }
}

// ---------------------------------------------------------------------------

Trace::Trace(Eigen::MatrixXd samples, std::vector<bool> accepted, std::vector<int> steps,
             std::vector<double> delta_h)
    : samples_(std::move(samples)),
      accepted_(std::move(accepted)),
      steps_(std::move(steps)),
      delta_h_(std::move(delta_h)) {
  const auto n = static_cast<std::size_t>(samples_.rows());
  require(accepted_.size() == n && steps_.size() == n && delta_h_.size() == n,
          "Trace: column lengths differ");
  frozen_from_ = samples_.rows();
}

bool Trace::divergent(Eigen::Index i) const {
  const double dh = delta_h_.at(static_cast<std::size_t>(i));
  return !std::isfinite(dh) || std::abs(dh) > kDivergenceThreshold;
}

double Trace::acceptance_rate(Eigen::Index begin, Eigen::Index end) const {
  require(0 <= begin && begin < end && end <= size(), "Trace::acceptance_rate: bad range");
  long hits = 0;
  for (Eigen::Index i = begin; i < end; ++i) hits += accepted_[static_cast<std::size_t>(i)];
  return static_cast<double>(hits) / static_cast<double>(end - begin);
}

bool Trace::operator==(const Trace& other) const {
  if (samples_.rows() != other.samples_.rows() || samples_.cols() != other.samples_.cols()) {
    return false;
  }
  auto same_bits = [](double a, double b) {
    return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
  };
  for (Eigen::Index i = 0; i < samples_.size(); ++i) {
    if (!same_bits(samples_.data()[i], other.samples_.data()[i])) return false;
  }
  for (std::size_t i = 0; i < delta_h_.size(); ++i) {
    if (!same_bits(delta_h_[i], other.delta_h_[i])) return false;
  }
  return accepted_ == other.accepted_ && steps_ == other.steps_;
}

TraceRecorder::TraceRecorder(Eigen::Index dim, Eigen::Index capacity) {
  trace_.samples_.resize(capacity, dim);
  trace_.accepted_.reserve(static_cast<std::size_t>(capacity));
  trace_.steps_.reserve(static_cast<std::size_t>(capacity));
  trace_.delta_h_.reserve(static_cast<std::size_t>(capacity));
}

void TraceRecorder::record(const Eigen::VectorXd& x, bool accepted, int steps,
                           double delta_h) {
  if (rows_ == trace_.samples_.rows()) {
    trace_.samples_.conservativeResize(std::max<Eigen::Index>(1, 2 * rows_),
                                       trace_.samples_.cols());
  }
  trace_.samples_.row(rows_) = x.transpose();
  trace_.accepted_.push_back(accepted);
  trace_.steps_.push_back(steps);
  trace_.delta_h_.push_back(delta_h);
  ++rows_;
}

Eigen::MatrixXd TraceRecorder::tail(Eigen::Index count) const {
  require(count <= rows_, "TraceRecorder::tail: not enough rows");
  return trace_.samples_.middleRows(rows_ - count, count);
}

double TraceRecorder::tail_acceptance(Eigen::Index count) const {
  require(count >= 1 && count <= rows_, "TraceRecorder::tail_acceptance: bad window");
  long hits = 0;
  for (Eigen::Index i = rows_ - count; i < rows_; ++i) {
    hits += trace_.accepted_[static_cast<std::size_t>(i)];
  }
  return static_cast<double>(hits) / static_cast<double>(count);
}

Trace TraceRecorder::finish() && {
  trace_.samples_.conservativeResize(rows_, trace_.samples_.cols());
  trace_.frozen_from_ = frozen_from_.value_or(rows_);
  return std::move(trace_);
}

// ---------------------------------------------------------------------------

StepResult hmc_step(const Eigen::VectorXd& x, const TargetModel& model,
                    const MassMatrix& mass, const Integrator& integrator, Rng& rng) {
  require_dim(static_cast<std::size_t>(model.dim()), static_cast<std::size_t>(x.size()),
              "hmc_step");
  const PhasePoint start{x, sample_momentum(mass, rng)};
  const double u = uniform01(rng);
  const double h_start = total_energy(start, model, mass);

  StepResult result{x, false, std::numeric_limits<double>::infinity(), true};
  PhasePoint end;
  try {
    end = integrator(start);
  } catch (const DivergenceError&) {
    return result;
  }
  const double h_end = total_energy(end, model, mass);
  result.delta_h = h_end - h_start;
  if (!std::isfinite(result.delta_h)) {
    result.delta_h = std::numeric_limits<double>::infinity();
    return result;
  }
  if (std::abs(result.delta_h) > kDivergenceThreshold) return result;
  result.divergent = false;
  // min(1, exp(-dH)); dH <= 0 always accepts since u < 1.
  if (u < std::exp(std::min(0.0, -result.delta_h))) {
    result.x = std::move(end.x);
    result.accepted = true;
  }
  return result;
}

StepResult hmc_step(const Eigen::VectorXd& x, const TargetModel& model,
                    const MassMatrix& mass, double epsilon, int steps, Rng& rng) {
  require(epsilon > 0.0, "hmc_step: epsilon must be > 0");
  require(steps >= 1, "hmc_step: steps must be >= 1");
  const Integrator integrator = [&](const PhasePoint& q) {
    return leapfrog(q.x, q.p, mass, model, epsilon, steps);
  };
  return hmc_step(x, model, mass, integrator, rng);
}

Trace run_chain(const TargetModel& model, const Eigen::VectorXd& x_init,
                const MassMatrix& mass, const Integrator& integrator, int steps,
                long n, Rng& rng) {
  require(n >= 1, "run_chain: need at least one iteration");
  require_dim(static_cast<std::size_t>(model.dim()), static_cast<std::size_t>(x_init.size()),
              "run_chain initial point");
  TraceRecorder recorder(model.dim(), n);
  Eigen::VectorXd x = x_init;
  for (long i = 0; i < n; ++i) {
    StepResult r = hmc_step(x, model, mass, integrator, rng);
    x = std::move(r.x);
    recorder.record(x, r.accepted, steps, r.delta_h);
  }
  recorder.set_final_mass(mass.matrix());
  recorder.set_frozen_from(0);
  return std::move(recorder).finish();
}

Trace run_standard_hmc(const TargetModel& model, const Eigen::VectorXd& x_init,
                       const MassMatrix& mass, double epsilon, int steps, long n,
                       Rng& rng) {
  require(epsilon > 0.0, "run_standard_hmc: epsilon must be > 0");
  require(steps >= 1, "run_standard_hmc: steps must be >= 1");
  const Integrator integrator = [&](const PhasePoint& q) {
    return leapfrog(q.x, q.p, mass, model, epsilon, steps);
  };
  return run_chain(model, x_init, mass, integrator, steps, n, rng);
}

MassMatrix mass_from_covariance(const RunningCovariance& rc) {
  const Eigen::MatrixXd cov = rc.covariance();
  double floor = rc.regularization();
  for (int attempt = 0; attempt < 4; ++attempt, floor *= 1000.0) {
    Eigen::MatrixXd regularized = cov;
    regularized.diagonal().array() += floor;
    try {
      return MassMatrix::from_inverse(regularized);
    } catch (const NumericalError&) {
    }
  }
  throw NumericalError("mass_from_covariance: covariance estimate is not invertible");
}

Trace mces_run(const TargetModel& model, const MCESConfig& config,
               const Eigen::VectorXd& x_init, Rng& rng) {
  config.validate();
  require_dim(static_cast<std::size_t>(model.dim()), static_cast<std::size_t>(x_init.size()),
              "mces_run initial point");
  const Eigen::Index n = model.dim();
  TraceRecorder recorder(n, config.n_max);
  recorder.set_config(config);

  // Warmstart: standard HMC with identity mass.
  const MassMatrix identity = MassMatrix::identity(n);
  const double warm_epsilon = config.integration_time / config.warmstart_steps;
  Eigen::VectorXd x = x_init;
  RunningCovariance covariance(n);
  for (long i = 0; i < config.n0; ++i) {
    StepResult r = hmc_step(x, model, identity, warm_epsilon, config.warmstart_steps, rng);
    x = std::move(r.x);
    recorder.record(x, r.accepted, config.warmstart_steps, r.delta_h);
    covariance.add(x);
  }

  MassMatrix mass = mass_from_covariance(covariance);
  StepSchedule schedule = StepSchedule::initial(config);
  bool mass_adapted = false;  // I_M
  Eigen::Index last_change = recorder.size();

  for (long count = config.n0; count < config.n_max;) {
    const double epsilon = config.integration_time / schedule.l;
    StepResult r = hmc_step(x, model, mass, epsilon, schedule.l, rng);
    x = std::move(r.x);
    recorder.record(x, r.accepted, schedule.l, r.delta_h);
    ++count;

    if (count % config.n_l != 0 || count - config.n0 < config.n_l) continue;

    AdaptationEvent event;
    event.sample_count = count;
    event.acceptance = recorder.tail_acceptance(config.n_l);
    event.l_before = schedule.l;
    if (count < config.n_m && (mass_adapted || event.acceptance > 0.0)) {
      covariance.add_rows(recorder.tail(config.n_l));
      mass = mass_from_covariance(covariance);
      mass_adapted = true;
      event.mass_updated = true;
    }
    const bool was_growing = schedule.growing;
    schedule.update(event.acceptance, config);
    event.l_after = schedule.l;
    event.growing_after = schedule.growing;
    event.stall_count_after = schedule.stall_count;
    if (event.mass_updated || event.l_after != event.l_before ||
        was_growing != schedule.growing) {
      last_change = recorder.size();
    }
    recorder.add_event(event);
  }

  recorder.set_final_mass(mass.matrix());
  if (!schedule.growing) recorder.set_frozen_from(last_change);
  return std::move(recorder).finish();
}

}  // namespace mces
