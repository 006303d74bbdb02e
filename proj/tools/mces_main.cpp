#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "mces/config_file.hpp"
#include "mces/datasets.hpp"
#include "mces/diagnostics.hpp"
#include "mces/error.hpp"
#include "mces/harness.hpp"
#include "mces/trace_io.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

struct RunArgs {
  std::string experiment;
  std::string config_file;
  std::optional<std::uint64_t> seed;
  std::optional<int> replicates;
  std::optional<int> workers;
  std::string out = "results";
  bool full_scale = false;
};

int cmd_run(const RunArgs& args) {
  mces::KeyValues settings;
  if (!args.config_file.empty()) settings = mces::read_key_values(args.config_file);
  if (args.seed) settings["seed"] = std::to_string(*args.seed);
  if (args.replicates) settings["replicates"] = std::to_string(*args.replicates);
  if (args.workers) settings["workers"] = std::to_string(*args.workers);

  if (args.experiment == "robustness") {
    mces::ExperimentSpec spec = mces::make_experiment_spec("eight_schools", settings, args.full_scale);
    spec.out_dir = args.out;
    const auto variants = mces::robustness_suite(spec);
    std::cout << "variant,final_acceptance,mean_ess_per_l\n";
    for (const auto& v : variants) {
      std::cout << v.name << ',' << mces::format_double(v.final_acceptance) << ','
                << mces::format_double(v.ess_per_l.mean()) << '\n';
    }
    return kOk;
  }

  mces::ExperimentSpec spec =
      mces::make_experiment_spec(args.experiment, settings, args.full_scale);
  spec.out_dir = args.out;
  if (spec.full_scale && spec.experiment == "lgcp") {
    std::cerr << "warning: full-scale LGCP run requested; this takes hours\n";
  }
  const auto report = mces::run_experiment(spec);
  for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
  std::cout << "wrote " << report.files.size() << " files under " << report.dir.string() << '\n';
  return kOk;
}

int cmd_verify(int dim, int grid, int pairs, std::uint64_t seed) {
  const auto cases = mces::verify_theorem(dim, grid, pairs, seed);
  int failures = 0;
  std::cout << "case,dim,best_T_over_pi,cell_over_pi,max_cov_error,random_mass_gap,ok\n";
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& c = cases[i];
    const bool ok = std::abs(c.best_time - std::numbers::pi / 2) <= c.cell + 1e-12 &&
                    c.covariance_error <= 1e-8 && c.random_mass_gap >= -1e-9;
    failures += ok ? 0 : 1;
    std::cout << i << ',' << c.dim << ',' << mces::format_double(c.best_time / std::numbers::pi)
              << ',' << mces::format_double(c.cell / std::numbers::pi) << ','
              << mces::format_double(c.covariance_error) << ','
              << mces::format_double(c.random_mass_gap) << ',' << (ok ? 1 : 0) << '\n';
  }
  return failures == 0 ? kOk : kNumerical;
}

int cmd_gen_lgcp(int d, std::uint64_t seed, const std::string& out) {
  const auto truth = mces::generate_lgcp_data(mces::LGCPParams::reference(d), seed);
  mces::save_lgcp_data(out, truth);
  std::cout << "wrote counts.csv, latent.csv, intensity.csv to " << out << " (total count "
            << truth.counts.sum() << ")\n";
  return kOk;
}

int cmd_ess(const std::string& path, long discard) {
  const mces::Trace trace = mces::load_trace(path);
  if (discard < 0 || discard >= trace.size()) {
    throw mces::ContractViolation("--discard must be in [0, " + std::to_string(trace.size()) + ")");
  }
  mces::write_ess_csv(std::cout, mces::ess_per_l(trace, discard));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maximum conditional entropy HMC sampler"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment and write CSV output");
  std::vector<std::string> choices = mces::experiment_ids();
  choices.push_back("robustness");
  run_cmd->add_option("experiment", run.experiment, "Experiment id")
      ->required()
      ->check(CLI::IsMember(choices));
  run_cmd->add_option("--config", run.config_file, "key = value configuration file")
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--seed", run.seed, "Base RNG seed");
  run_cmd->add_option("--replicates", run.replicates, "Number of independent chains");
  run_cmd->add_option("--workers", run.workers, "Concurrent replicates (0: all cores)");
  run_cmd->add_option("--out", run.out, "Output directory")->capture_default_str();
  run_cmd->add_flag("--full-scale", run.full_scale, "Use the full-size settings");

  int dim = 5, grid = 400, pairs = 20;
  std::uint64_t theorem_seed = 0;
  auto* verify_cmd = app.add_subcommand("verify-theorem", "Check the optimal (M, T) claim on random Gaussians");
  verify_cmd->add_option("--dim", dim, "Largest dimension")->capture_default_str()->check(CLI::PositiveNumber);
  verify_cmd->add_option("--grid", grid, "Time grid points on (0, pi]")->capture_default_str()->check(CLI::Range(4, 1000000));
  verify_cmd->add_option("--pairs", pairs, "Random instances")->capture_default_str()->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", theorem_seed, "RNG seed")->capture_default_str();

  int d = 16;
  std::uint64_t lgcp_seed = 0;
  std::string lgcp_out = "lgcp_data";
  auto* gen_cmd = app.add_subcommand("gen-lgcp", "Draw a synthetic LGCP data set from the prior");
  gen_cmd->add_option("--d", d, "Grid size")->capture_default_str()->check(CLI::Range(2, 4096));
  gen_cmd->add_option("--seed", lgcp_seed, "RNG seed")->capture_default_str();
  gen_cmd->add_option("--out", lgcp_out, "Output directory")->capture_default_str();

  std::string trace_path;
  long discard = 0;
  auto* ess_cmd = app.add_subcommand("ess", "Per-dimension ESS and ESS/L of a trace file");
  ess_cmd->add_option("trace", trace_path, "Trace CSV")->required()->check(CLI::ExistingFile);
  ess_cmd->add_option("--discard", discard, "Leading rows to drop")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*verify_cmd) return cmd_verify(dim, grid, pairs, theorem_seed);
    if (*gen_cmd) return cmd_gen_lgcp(d, lgcp_seed, lgcp_out);
    if (*ess_cmd) return cmd_ess(trace_path, discard);
  } catch (const mces::ContractViolation& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const mces::FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  } catch (const mces::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kData;
  }
  return kUsage;
}
