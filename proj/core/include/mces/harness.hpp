#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "mces/config_file.hpp"
#include "mces/sampler.hpp"

namespace mces {

/// One experiment invocation. `params` holds the experiment's own keys
/// (samples, burn_in, b, d, data_file, ...); the sampler keys live in `config`.
struct ExperimentSpec {
  std::string experiment;  // gauss1d | rosenbrock | eight_schools | german_credit | lgcp
  KeyValues params;
  MCESConfig config;
  int replicates = 1;
  int workers = 0;  // 0: one per hardware thread
  std::filesystem::path out_dir = "results";
  bool full_scale = false;
};

const std::vector<std::string>& experiment_ids();

/// Builds a spec from a flat key-value file's contents. Sampler keys go to
/// the config, `replicates`/`workers` to the spec, experiment keys to params;
/// anything else is a FormatError. N_max defaults to burn_in + samples.
ExperimentSpec make_experiment_spec(const std::string& experiment, const KeyValues& settings,
                                    bool full_scale = false);

struct ExperimentReport {
  std::filesystem::path dir;
  std::vector<std::filesystem::path> files;
  std::vector<std::string> warnings;
};

/// Runs every replicate (concurrently, one RNG stream per replicate) and
/// writes trace_<r>.csv, ess.csv, summary.csv, runs.csv and config.snapshot
/// under out_dir/<experiment>. Output is byte-identical for a repeated spec.
ExperimentReport run_experiment(const ExperimentSpec& spec);

struct VariantResult {
  std::string name;
  MCESConfig config;
  double final_acceptance = 0.0;
  Eigen::VectorXd ess_per_l;  // replicate mean, per dimension
};

/// Eight Schools under the reference settings and three alternative
/// settings (Acc_min 0.4 with I_max 2; I_max 1; L_max 100 with I_max 2).
std::vector<VariantResult> robustness_suite(const ExperimentSpec& base);

/// Acceptance rate over the frozen phase, or the last monitoring window when
/// the kernel never froze.
double final_acceptance(const Trace& trace);

/// Plain HMC with identity mass, used as a self-consistency reference.
struct ReferenceHMCConfig {
  double epsilon = 0.05;
  int steps = 20;
  long burn_in = 1000;
  long samples = 20000;
};
Trace run_reference_hmc(const TargetModel& model, const Eigen::VectorXd& x_init,
                        const ReferenceHMCConfig& config, std::uint64_t seed);

struct TheoremCase {
  Eigen::Index dim = 0;
  double best_time = 0.0;           // grid argmax of the log-det objective at M = Sigma^{-1}
  double cell = 0.0;                // grid spacing
  double covariance_error = 0.0;    // max |C(pi/2) - Sigma|
  double random_mass_gap = 0.0;     // optimum minus best value under a random commuting M
};

/// Checks the optimal (M, T) claim for `pairs` random commuting pairs of
/// dimension 1..max_dim on a grid of `grid` times over (0, pi].
std::vector<TheoremCase> verify_theorem(int max_dim, int grid, int pairs, std::uint64_t seed);

}  // namespace mces
