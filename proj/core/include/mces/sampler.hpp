#pragma once

#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "mces/hamiltonian.hpp"
#include "mces/models/target_model.hpp"
#include "mces/random.hpp"
#include "mces/running_covariance.hpp"

namespace mces {

/// Adaptation parameters of the maximum conditional entropy sampler. Defaults
/// are the reference settings (L0 = 1, L_max = 60, rho = 1.2, Acc_min = 0.6,
/// N_max = 10000, N_L = 200, N_M = 2000, N0 = 1000, I_max = 1).
struct MCESConfig {
  double acc_min = 0.6;
  long n0 = 1000;       // warmstart samples
  long n_max = 10000;   // total samples, warmstart included
  long n_m = 2000;      // no mass update at or after this sample count
  long n_l = 200;       // monitoring window
  int l0 = 1;
  int l_max = 60;
  double rho = 1.2;
  int i_max = 1;
  double integration_time = std::numbers::pi / 2.0;
  std::uint64_t seed = 0;
  int warmstart_steps = 20;  // identity mass, epsilon = T / warmstart_steps
  // false: a window whose acceptance is not above Acc_min never becomes the
  // best Acc/L, so a rollback always lands on an L that reached Acc_min.
  // true: compare against whatever window came last, as in the pseudocode.
  bool literal_rollback = false;

  /// Throws ContractViolation on inconsistent values.
  void validate() const;
  bool operator==(const MCESConfig&) const = default;
};

/// L_new = min(max(L_old + 1, round(rho L_old)), L_max).
int grow_steps(int l_old, double rho, int l_max);

/// Mutable leapfrog-step schedule. Everything else the sampler carries
/// (position, mass matrix, covariance) lives in mces_run.
struct StepSchedule {
  int l = 1;
  int l_old = 1;
  double acc_old = 0.0;
  bool growing = true;    // I_L
  int stall_count = 0;    // I_count

  static StepSchedule initial(const MCESConfig& config);
  /// Applies one monitoring-instant update given the window acceptance rate.
  void update(double acceptance, const MCESConfig& config);
};

struct AdaptationEvent {
  long sample_count = 0;  // samples in the chain when the update ran
  double acceptance = 0.0;
  int l_before = 0;
  int l_after = 0;
  bool mass_updated = false;
  bool growing_after = true;
  int stall_count_after = 0;
};

/// Finished chain. Row i of samples() is the state after iteration i.
class Trace {
 public:
  Trace() = default;
  Trace(Eigen::MatrixXd samples, std::vector<bool> accepted, std::vector<int> steps,
        std::vector<double> delta_h);

  Eigen::Index size() const { return samples_.rows(); }
  Eigen::Index dim() const { return samples_.cols(); }

  const Eigen::MatrixXd& samples() const { return samples_; }
  const std::vector<bool>& accepted() const { return accepted_; }
  const std::vector<int>& steps() const { return steps_; }
  const std::vector<double>& delta_h() const { return delta_h_; }
  /// Rejections forced by a blown-up trajectory (|dH| > 1000 or non-finite).
  bool divergent(Eigen::Index i) const;

  const std::optional<MCESConfig>& config() const { return config_; }
  const std::optional<Eigen::MatrixXd>& final_mass() const { return final_mass_; }
  const std::vector<AdaptationEvent>& events() const { return events_; }
  /// First row produced with the final (M, L); size() if the kernel never froze.
  Eigen::Index frozen_from() const { return frozen_from_; }

  double acceptance_rate(Eigen::Index begin, Eigen::Index end) const;

  bool operator==(const Trace& other) const;

 private:
  friend class TraceRecorder;
  Eigen::MatrixXd samples_;
  std::vector<bool> accepted_;
  std::vector<int> steps_;
  std::vector<double> delta_h_;
  std::optional<MCESConfig> config_;
  std::optional<Eigen::MatrixXd> final_mass_;
  std::vector<AdaptationEvent> events_;
  Eigen::Index frozen_from_ = 0;
};

/// Accumulates rows of a Trace while a chain runs.
class TraceRecorder {
 public:
  TraceRecorder(Eigen::Index dim, Eigen::Index capacity);

  void record(const Eigen::VectorXd& x, bool accepted, int steps, double delta_h);
  Eigen::Index size() const { return rows_; }
  /// Rows [end - count, end) of the samples recorded so far.
  Eigen::MatrixXd tail(Eigen::Index count) const;
  double tail_acceptance(Eigen::Index count) const;

  void set_config(const MCESConfig& config) { trace_.config_ = config; }
  void set_final_mass(Eigen::MatrixXd mass) { trace_.final_mass_ = std::move(mass); }
  void add_event(const AdaptationEvent& event) { trace_.events_.push_back(event); }
  void set_frozen_from(Eigen::Index row) { frozen_from_ = row; }

  Trace finish() &&;

 private:
  Trace trace_;
  Eigen::Index rows_ = 0;
  std::optional<Eigen::Index> frozen_from_;
};

/// |dH| beyond which a trajectory counts as divergent and is rejected.
inline constexpr double kDivergenceThreshold = 1000.0;

struct StepResult {
  Eigen::VectorXd x;
  bool accepted = false;
  double delta_h = 0.0;  // H(end) - H(start); +inf when the trajectory diverged
  bool divergent = false;
};

/// Maps the start of a trajectory to its end point.
using Integrator = std::function<PhasePoint(const PhasePoint&)>;

/// One Metropolis-corrected HMC transition using the leapfrog integrator.
StepResult hmc_step(const Eigen::VectorXd& x, const TargetModel& model,
                    const MassMatrix& mass, double epsilon, int steps, Rng& rng);

/// Same transition with a caller-supplied integrator (e.g. an exact flow).
StepResult hmc_step(const Eigen::VectorXd& x, const TargetModel& model,
                    const MassMatrix& mass, const Integrator& integrator, Rng& rng);

Trace run_standard_hmc(const TargetModel& model, const Eigen::VectorXd& x_init,
                       const MassMatrix& mass, double epsilon, int steps, long n,
                       Rng& rng);

Trace run_chain(const TargetModel& model, const Eigen::VectorXd& x_init,
                const MassMatrix& mass, const Integrator& integrator, int steps,
                long n, Rng& rng);

/// Mass matrix M = (C + eps_reg I)^{-1} from a covariance estimate C; retries
/// with a 1000x larger floor up to three times before throwing NumericalError.
MassMatrix mass_from_covariance(const RunningCovariance& rc);

/// Maximum conditional entropy sampler: standard-HMC warmstart, then HMC with
/// M = inverse sample covariance and T fixed, adapting M (until N_M) and the
/// number of leapfrog steps L from the windowed acceptance rate.
Trace mces_run(const TargetModel& model, const MCESConfig& config,
               const Eigen::VectorXd& x_init, Rng& rng);

}  // namespace mces
