#include "mces/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <thread>

#include "mces/datasets.hpp"
#include "mces/diagnostics.hpp"
#include "mces/error.hpp"
#include "mces/gaussian_theory.hpp"
#include "mces/models/eight_schools.hpp"
#include "mces/models/gaussian.hpp"
#include "mces/models/lgcp.hpp"
#include "mces/models/rosenbrock.hpp"
#include "mces/trace_io.hpp"

namespace mces {
namespace {

constexpr double kPi = std::numbers::pi;

const std::set<std::string>& allowed_keys(const std::string& experiment) {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"gauss1d", {"samples", "x_init", "times"}},
      {"rosenbrock", {"samples", "burn_in", "write_traces", "b", "b_min", "b_max", "b_step"}},
      {"eight_schools", {"samples", "burn_in", "write_traces", "data_file"}},
      {"german_credit",
       {"samples", "burn_in", "write_traces", "data_file", "reference", "reference_samples",
        "reference_epsilon", "reference_steps"}},
      {"lgcp", {"samples", "burn_in", "write_traces", "d", "data_dir", "data_seed"}},
  };
  return keys.at(experiment);
}

KeyValues default_params(const std::string& experiment, bool full_scale) {
  if (experiment == "gauss1d") {
    return {{"samples", "100"}, {"x_init", "1"}, {"times", "0.45,0.49,0.5,0.95,0.99,1"}};
  }
  if (experiment == "rosenbrock") {
    return {{"samples", "10000"}, {"burn_in", "1000"}, {"write_traces", "1"},
            {"b_min", "0.05"},    {"b_max", "0.7"},    {"b_step", "0.05"}};
  }
  if (experiment == "eight_schools") {
    return {{"samples", "100000"},
            {"burn_in", "1000"},
            {"write_traces", "1"},
            {"data_file", (default_data_dir() / "eight_schools.csv").string()}};
  }
  if (experiment == "german_credit") {
    return {{"samples", "10000"},
            {"burn_in", "1000"},
            {"write_traces", "1"},
            {"data_file", (default_data_dir() / "german.data-numeric").string()},
            {"reference", "1"},
            {"reference_samples", "20000"},
            {"reference_epsilon", "0.05"},
            {"reference_steps", "20"}};
  }
  // lgcp
  if (full_scale) {
    return {{"samples", "500000"}, {"burn_in", "50000"}, {"write_traces", "0"}, {"d", "32"}};
  }
  return {{"samples", "20000"}, {"burn_in", "2000"}, {"write_traces", "0"}, {"d", "16"}};
}

int default_replicates(const std::string& experiment, bool full_scale) {
  if (experiment == "rosenbrock") return full_scale ? 100 : 10;
  if (experiment == "german_credit") return full_scale ? 100 : 1;
  return 1;
}

double get_double(const KeyValues& params, const std::string& key) {
  return parse_double(params.at(key), key);
}

long get_long(const KeyValues& params, const std::string& key) {
  return parse_long(params.at(key), key);
}

bool get_flag(const KeyValues& params, const std::string& key) {
  const auto it = params.find(key);
  return it != params.end() && parse_long(it->second, key) != 0;
}

std::vector<double> parse_list(const std::string& text, const std::string& key) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw FormatError("empty entry in '" + key + "'");
    values.push_back(parse_double(item.substr(first, last - first + 1), key));
  }
  if (values.empty()) throw FormatError("'" + key + "' must list at least one value");
  return values;
}

std::string short_number(double value) {
  std::ostringstream out;
  out << value;
  return out.str();
}

template <class F>
void parallel_for(int n, int workers, F&& body) {
  if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(n));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          body(i);
        } catch (...) {
          errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::ofstream open_out(const std::filesystem::path& path, ExperimentReport& report) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  report.files.push_back(path);
  return out;
}

void write_snapshot(const std::filesystem::path& dir, const ExperimentSpec& spec,
                    const MCESConfig& config, const KeyValues& extra,
                    ExperimentReport& report) {
  KeyValues values = to_key_values(config);
  for (const auto& [k, v] : spec.params) values[k] = v;
  for (const auto& [k, v] : extra) values[k] = v;
  values["experiment"] = spec.experiment;
  values["replicates"] = std::to_string(spec.replicates);
  auto out = open_out(dir / "config.snapshot", report);
  out << "# experiment configuration; accepted back by `run --config`\n";
  write_key_values(out, values);
}

struct Replicate {
  Trace trace;
  ESSReport ess;
  PosteriorSummary summary;
  double acceptance = 0.0;
  double final_acc = 0.0;
};

// Maps sampled coordinates to the reported parameters (identity by default).
using Reporter = std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)>;

std::vector<Replicate> run_mces_replicates(const TargetModel& model, const MCESConfig& config,
                                           const Eigen::VectorXd& x_init, int replicates,
                                           int workers, std::uint64_t stream_base,
                                           long burn_in, const Reporter& reporter) {
  std::vector<Replicate> out(static_cast<std::size_t>(replicates));
  parallel_for(replicates, workers, [&](int r) {
    Rng rng = make_rng(config.seed, stream_base + static_cast<std::uint64_t>(r));
    Replicate& rep = out[static_cast<std::size_t>(r)];
    rep.trace = mces_run(model, config, x_init, rng);
    rep.ess = ess_per_l(rep.trace, burn_in);
    const Eigen::MatrixXd kept =
        rep.trace.samples().bottomRows(rep.trace.size() - burn_in);
    rep.summary = summarize(reporter ? reporter(kept) : kept);
    rep.acceptance = rep.trace.acceptance_rate(burn_in, rep.trace.size());
    rep.final_acc = final_acceptance(rep.trace);
  });
  return out;
}

ESSReport mean_report(const std::vector<Replicate>& reps) {
  ESSReport mean = reps.front().ess;
  for (std::size_t r = 1; r < reps.size(); ++r) {
    mean.ess += reps[r].ess.ess;
    mean.ess_per_l += reps[r].ess.ess_per_l;
    mean.mean_steps += reps[r].ess.mean_steps;
  }
  const double n = static_cast<double>(reps.size());
  mean.ess /= n;
  mean.ess_per_l /= n;
  mean.mean_steps /= n;
  return mean;
}

void write_replicate_files(const std::filesystem::path& dir, const std::vector<Replicate>& reps,
                           const std::vector<std::string>& names, bool write_traces,
                           ExperimentReport& report) {
  for (std::size_t r = 0; r < reps.size(); ++r) {
    if (write_traces) {
      const auto path = dir / ("trace_" + std::to_string(r) + ".csv");
      save_trace(path, reps[r].trace);
      report.files.push_back(path);
    }
    if (reps.size() > 1) {
      auto out = open_out(dir / ("ess_" + std::to_string(r) + ".csv"), report);
      write_ess_csv(out, reps[r].ess);
    }
  }
  {
    auto out = open_out(dir / "ess.csv", report);
    write_ess_csv(out, mean_report(reps));
  }
  {
    auto out = open_out(dir / "summary.csv", report);
    out << "replicate,param,mean,sd\n";
    for (std::size_t r = 0; r < reps.size(); ++r) {
      const auto& s = reps[r].summary;
      for (Eigen::Index i = 0; i < s.mean.size(); ++i) {
        out << r << ',' << names[static_cast<std::size_t>(i)] << ','
            << format_double(s.mean[i]) << ',' << format_double(s.sd[i]) << '\n';
      }
    }
  }
  {
    auto out = open_out(dir / "runs.csv", report);
    out << "replicate,acceptance,final_acceptance,final_L,frozen_from,mean_L,"
           "min_ess_per_l,mean_ess_per_l\n";
    for (std::size_t r = 0; r < reps.size(); ++r) {
      const auto& rep = reps[r];
      out << r << ',' << format_double(rep.acceptance) << ',' << format_double(rep.final_acc)
          << ',' << rep.trace.steps().back() << ',' << rep.trace.frozen_from() << ','
          << format_double(rep.ess.mean_steps) << ','
          << format_double(rep.ess.ess_per_l.minCoeff()) << ','
          << format_double(rep.ess.ess_per_l.mean()) << '\n';
    }
  }
}

std::vector<std::string> indexed_names(const std::string& prefix, Eigen::Index n, int base) {
  std::vector<std::string> names;
  for (Eigen::Index i = 0; i < n; ++i) names.push_back(prefix + std::to_string(i + base));
  return names;
}

void run_gauss1d(const ExperimentSpec& spec, const std::filesystem::path& dir,
                 ExperimentReport& report) {
  const long n = get_long(spec.params, "samples");
  const double x0 = get_double(spec.params, "x_init");
  const std::vector<double> factors = parse_list(spec.params.at("times"), "times");
  const GaussianTarget target = GaussianTarget::centered(Eigen::MatrixXd::Identity(1, 1));
  const MassMatrix mass = MassMatrix::identity(1);

  auto regimes = open_out(dir / "regimes.csv", report);
  regimes << "T_over_pi,acceptance,mean,variance,lag1_autocorrelation\n";
  for (std::size_t i = 0; i < factors.size(); ++i) {
    const double t = factors[i] * kPi;
    const auto sub = dir / ("T_" + short_number(factors[i]) + "pi");
    std::filesystem::create_directories(sub);
    Rng rng = make_rng(spec.config.seed, i);
    const Integrator flow = [t](const PhasePoint& s) {
      return flow_1d(1.0, 1.0, s.x[0], s.p[0], t);
    };
    const Trace trace = run_chain(target, Eigen::VectorXd::Constant(1, x0), mass, flow, 1, n, rng);
    save_trace(sub / "trace_0.csv", trace);
    report.files.push_back(sub / "trace_0.csv");

    const Eigen::VectorXd x = trace.samples().col(0);
    const PosteriorSummary s = summarize(trace.samples());
    {
      auto out = open_out(sub / "summary.csv", report);
      out << "replicate,param,mean,sd\n0,x," << format_double(s.mean[0]) << ','
          << format_double(s.sd[0]) << '\n';
    }
    if (x.size() >= 10 && !is_constant(x)) {
      auto out = open_out(sub / "ess.csv", report);
      write_ess_csv(out, ess_per_l(trace, 0));
    }
    MCESConfig config = spec.config;
    config.integration_time = t;
    write_snapshot(sub, spec, config, {{"times", short_number(factors[i])}}, report);

    regimes << short_number(factors[i]) << ','
            << format_double(trace.acceptance_rate(0, trace.size())) << ','
            << format_double(s.mean[0]) << ',' << format_double(s.sd[0] * s.sd[0]) << ','
            << format_double(x.size() > 1 ? autocorrelation(x, 1) : 0.0) << '\n';
  }
}

void run_rosenbrock(const ExperimentSpec& spec, const std::filesystem::path& dir,
                    ExperimentReport& report) {
  std::vector<double> bs;
  if (spec.params.count("b")) {
    bs = parse_list(spec.params.at("b"), "b");
  } else {
    const double lo = get_double(spec.params, "b_min");
    const double hi = get_double(spec.params, "b_max");
    const double step = get_double(spec.params, "b_step");
    require(step > 0.0 && hi >= lo, "rosenbrock: need b_step > 0 and b_max >= b_min");
    const long count = std::lround((hi - lo) / step) + 1;
    for (long i = 0; i < count; ++i) bs.push_back(lo + static_cast<double>(i) * step);
  }
  const long burn_in = get_long(spec.params, "burn_in");
  const bool traces = get_flag(spec.params, "write_traces");

  auto sweep = open_out(dir / "sweep.csv", report);
  sweep << "b,mean_acceptance,ess_per_l_x1,ess_per_l_x2,var_x1,var_x2\n";
  for (std::size_t i = 0; i < bs.size(); ++i) {
    const RosenbrockTarget model(bs[i]);
    const auto sub = dir / ("b_" + short_number(bs[i]));
    std::filesystem::create_directories(sub);
    const auto reps = run_mces_replicates(model, spec.config, Eigen::VectorXd::Zero(2),
                                          spec.replicates, spec.workers,
                                          static_cast<std::uint64_t>(i) << 32, burn_in, {});
    write_replicate_files(sub, reps, {"x_1", "x_2"}, traces, report);
    write_snapshot(sub, spec, spec.config, {{"b", short_number(bs[i])}}, report);

    const ESSReport mean = mean_report(reps);
    double acc = 0.0;
    Eigen::Vector2d var = Eigen::Vector2d::Zero();
    for (const auto& r : reps) {
      acc += r.acceptance;
      var += r.summary.sd.array().square().matrix();
    }
    acc /= static_cast<double>(reps.size());
    var /= static_cast<double>(reps.size());
    sweep << short_number(bs[i]) << ',' << format_double(acc) << ','
          << format_double(mean.ess_per_l[0]) << ',' << format_double(mean.ess_per_l[1]) << ','
          << format_double(var[0]) << ',' << format_double(var[1]) << '\n';
  }
}

Eigen::MatrixXd eight_schools_constrained(const Eigen::MatrixXd& u) {
  Eigen::MatrixXd out(u.rows(), 10);
  for (Eigen::Index r = 0; r < u.rows(); ++r) {
    const EightSchoolsParameters p = eight_schools_transform(u.row(r).transpose());
    for (int i = 0; i < 8; ++i) out(r, i) = p.theta[static_cast<std::size_t>(i)];
    out(r, 8) = p.mu;
    out(r, 9) = p.tau;
  }
  return out;
}

std::vector<std::string> eight_schools_names() {
  auto names = indexed_names("theta_", 8, 1);
  names.push_back("mu");
  names.push_back("tau");
  return names;
}

std::vector<Replicate> run_eight_schools_in(const ExperimentSpec& spec, const MCESConfig& config,
                                            const std::filesystem::path& dir,
                                            ExperimentReport& report) {
  const EightSchoolsModel model(load_eight_schools(spec.params.at("data_file")));
  const long burn_in = get_long(spec.params, "burn_in");
  auto reps = run_mces_replicates(model, config, Eigen::VectorXd::Zero(10), spec.replicates,
                                  spec.workers, 0, burn_in, eight_schools_constrained);
  write_replicate_files(dir, reps, eight_schools_names(), get_flag(spec.params, "write_traces"),
                        report);
  write_snapshot(dir, spec, config, {}, report);
  return reps;
}

void run_german_credit(const ExperimentSpec& spec, const std::filesystem::path& dir,
                       ExperimentReport& report) {
  const LogisticRegressionModel model = load_german_credit(spec.params.at("data_file"));
  const long burn_in = get_long(spec.params, "burn_in");
  const Eigen::VectorXd x0 = Eigen::VectorXd::Zero(model.dim());
  const auto reps = run_mces_replicates(model, spec.config, x0, spec.replicates, spec.workers,
                                        0, burn_in, {});
  const auto names = indexed_names("beta_", model.dim(), 0);
  write_replicate_files(dir, reps, names, get_flag(spec.params, "write_traces"), report);
  write_snapshot(dir, spec, spec.config, {}, report);

  if (!get_flag(spec.params, "reference")) return;
  ReferenceHMCConfig ref;
  ref.epsilon = get_double(spec.params, "reference_epsilon");
  ref.steps = static_cast<int>(get_long(spec.params, "reference_steps"));
  ref.samples = get_long(spec.params, "reference_samples");
  ref.burn_in = burn_in;
  const Trace trace = run_reference_hmc(model, x0, ref, spec.config.seed);
  const PosteriorSummary rs = summarize(trace, ref.burn_in);
  auto out = open_out(dir / "reference_comparison.csv", report);
  out << "param,mces_mean,reference_mean,reference_sd,abs_diff\n";
  for (Eigen::Index i = 0; i < model.dim(); ++i) {
    const double m = reps.front().summary.mean[i];
    out << names[static_cast<std::size_t>(i)] << ',' << format_double(m) << ','
        << format_double(rs.mean[i]) << ',' << format_double(rs.sd[i]) << ','
        << format_double(std::abs(m - rs.mean[i])) << '\n';
  }
}

void run_lgcp(const ExperimentSpec& spec, const std::filesystem::path& dir,
              ExperimentReport& report) {
  const int d = static_cast<int>(get_long(spec.params, "d"));
  const LGCPParams params = LGCPParams::reference(d);
  LGCPGroundTruth truth;
  if (spec.params.count("data_dir")) {
    truth = load_lgcp_data(spec.params.at("data_dir"));
    if (truth.counts.rows() != d) {
      throw FormatError("lgcp: data grid is " + std::to_string(truth.counts.rows()) +
                        " cells wide but d = " + std::to_string(d));
    }
  } else {
    const std::uint64_t data_seed =
        spec.params.count("data_seed")
            ? static_cast<std::uint64_t>(get_long(spec.params, "data_seed"))
            : spec.config.seed;
    truth = generate_lgcp_data(params, data_seed);
  }
  save_lgcp_data(dir / "data", truth);
  for (const char* f : {"counts.csv", "latent.csv", "intensity.csv"}) {
    report.files.push_back(dir / "data" / f);
  }

  const LGCPModel model(params, truth.counts);
  const long burn_in = get_long(spec.params, "burn_in");
  const Eigen::VectorXd x0 = Eigen::VectorXd::Constant(model.dim(), params.mu);
  const auto reps = run_mces_replicates(model, spec.config, x0, spec.replicates, spec.workers,
                                        0, burn_in, {});
  std::vector<std::string> names;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) names.push_back("x_" + std::to_string(i) + "_" + std::to_string(j));
  }
  write_replicate_files(dir, reps, names, get_flag(spec.params, "write_traces"), report);
  write_snapshot(dir, spec, spec.config, {}, report);

  Eigen::VectorXd truth_flat(model.dim());
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) truth_flat[static_cast<Eigen::Index>(i) * d + j] = truth.latent(i, j);
  }
  auto out = open_out(dir / "lgcp_report.csv", report);
  out << "replicate,acceptance,final_acceptance,correlation_with_truth\n";
  for (std::size_t r = 0; r < reps.size(); ++r) {
    const Eigen::VectorXd& mean = reps[r].summary.mean;
    Eigen::MatrixXd grid(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) grid(i, j) = mean[static_cast<Eigen::Index>(i) * d + j];
    }
    const auto path = dir / ("posterior_mean_" + std::to_string(r) + ".csv");
    write_grid_csv(path, grid, false);
    report.files.push_back(path);
    out << r << ',' << format_double(reps[r].acceptance) << ','
        << format_double(reps[r].final_acc) << ','
        << format_double(pearson_correlation(mean, truth_flat)) << '\n';
  }
}

}  // namespace

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids = {"gauss1d", "rosenbrock", "eight_schools",
                                               "german_credit", "lgcp"};
  return ids;
}

ExperimentSpec make_experiment_spec(const std::string& experiment, const KeyValues& settings,
                                    bool full_scale) {
  const auto& ids = experiment_ids();
  if (std::find(ids.begin(), ids.end(), experiment) == ids.end()) {
    throw FormatError("unknown experiment '" + experiment + "'");
  }
  ExperimentSpec spec;
  spec.experiment = experiment;
  spec.full_scale = full_scale;
  spec.params = default_params(experiment, full_scale);
  spec.replicates = default_replicates(experiment, full_scale);
  const auto& allowed = allowed_keys(experiment);
  bool n_max_given = false;
  for (const auto& [key, value] : settings) {
    if (key == "experiment") {
      if (value != experiment) {
        throw FormatError("config is for experiment '" + value + "', not '" + experiment + "'");
      }
    } else if (key == "replicates") {
      spec.replicates = static_cast<int>(parse_long(value, key));
    } else if (key == "workers") {
      spec.workers = static_cast<int>(parse_long(value, key));
    } else if (apply_config_key(spec.config, key, value)) {
      n_max_given = n_max_given || key == "N_max";
    } else if (allowed.count(key)) {
      spec.params[key] = value;
    } else {
      throw FormatError("unknown key '" + key + "' for experiment '" + experiment + "'");
    }
  }
  require(spec.replicates >= 1, "replicates must be >= 1");
  require(spec.workers >= 0, "workers must be >= 0");
  if (experiment == "gauss1d") {
    require(get_long(spec.params, "samples") >= 1, "samples must be >= 1");
    return spec;
  }
  const long burn_in = get_long(spec.params, "burn_in");
  require(burn_in >= 0, "burn_in must be >= 0");
  if (n_max_given) {
    spec.params["samples"] = std::to_string(spec.config.n_max - burn_in);
  } else {
    spec.config.n_max = burn_in + get_long(spec.params, "samples");
  }
  require(get_long(spec.params, "samples") >= 10, "need at least 10 retained samples");
  spec.config.validate();
  return spec;
}

ExperimentReport run_experiment(const ExperimentSpec& spec) {
  ExperimentReport report;
  report.dir = spec.out_dir / spec.experiment;
  std::filesystem::create_directories(report.dir);
  if (spec.full_scale && spec.experiment == "lgcp") {
    report.warnings.push_back(
        "full-scale LGCP (d = 32, 5.5e5 samples) takes hours and holds the full chain in "
        "memory (about 4.5 GB per replicate)");
  }
  if (spec.experiment == "gauss1d") {
    run_gauss1d(spec, report.dir, report);
  } else if (spec.experiment == "rosenbrock") {
    run_rosenbrock(spec, report.dir, report);
  } else if (spec.experiment == "eight_schools") {
    run_eight_schools_in(spec, spec.config, report.dir, report);
  } else if (spec.experiment == "german_credit") {
    run_german_credit(spec, report.dir, report);
  } else if (spec.experiment == "lgcp") {
    run_lgcp(spec, report.dir, report);
  } else {
    throw FormatError("unknown experiment '" + spec.experiment + "'");
  }
  return report;
}

std::vector<VariantResult> robustness_suite(const ExperimentSpec& base) {
  require(base.experiment == "eight_schools", "robustness_suite: needs the eight_schools experiment");
  std::vector<VariantResult> variants(4);
  variants[0] = {"baseline", base.config, 0.0, {}};
  variants[1] = {"test1", base.config, 0.0, {}};
  variants[1].config.acc_min = 0.4;
  variants[1].config.i_max = 2;
  variants[2] = {"test2", base.config, 0.0, {}};
  variants[2].config.i_max = 1;
  variants[3] = {"test3", base.config, 0.0, {}};
  variants[3].config.l_max = 100;
  variants[3].config.i_max = 2;

  const auto root = base.out_dir / "robustness";
  std::filesystem::create_directories(root);
  ExperimentReport report;
  for (auto& v : variants) {
    v.config.validate();
    const auto dir = root / v.name;
    std::filesystem::create_directories(dir);
    ExperimentSpec spec = base;
    spec.config = v.config;
    const auto reps = run_eight_schools_in(spec, v.config, dir, report);
    v.ess_per_l = mean_report(reps).ess_per_l;
    v.final_acceptance = 0.0;
    for (const auto& r : reps) v.final_acceptance += r.final_acc;
    v.final_acceptance /= static_cast<double>(reps.size());
  }
  auto out = open_out(root / "robustness.csv", report);
  out << "variant,Acc_min,I_max,L_max,final_acceptance,mean_ess_per_l,min_ess_per_l\n";
  for (const auto& v : variants) {
    out << v.name << ',' << format_double(v.config.acc_min) << ',' << v.config.i_max << ','
        << v.config.l_max << ',' << format_double(v.final_acceptance) << ','
        << format_double(v.ess_per_l.mean()) << ',' << format_double(v.ess_per_l.minCoeff())
        << '\n';
  }
  return variants;
}

double final_acceptance(const Trace& trace) {
  require(trace.size() > 0, "final_acceptance: empty trace");
  if (trace.frozen_from() < trace.size()) {
    return trace.acceptance_rate(trace.frozen_from(), trace.size());
  }
  const Eigen::Index window =
      trace.config() ? std::min<Eigen::Index>(trace.config()->n_l, trace.size()) : trace.size();
  return trace.acceptance_rate(trace.size() - window, trace.size());
}

Trace run_reference_hmc(const TargetModel& model, const Eigen::VectorXd& x_init,
                        const ReferenceHMCConfig& config, std::uint64_t seed) {
  require(config.epsilon > 0.0 && config.steps >= 1, "run_reference_hmc: bad step settings");
  Rng rng = make_rng(seed, 0x7265'6600ULL);
  return run_standard_hmc(model, x_init, MassMatrix::identity(model.dim()), config.epsilon,
                          config.steps, config.burn_in + config.samples, rng);
}

std::vector<TheoremCase> verify_theorem(int max_dim, int grid, int pairs, std::uint64_t seed) {
  require(max_dim >= 1 && grid >= 4 && pairs >= 1, "verify_theorem: bad arguments");
  Rng rng = make_rng(seed);
  std::vector<TheoremCase> cases;
  const double cell = kPi / grid;
  for (int c = 0; c < pairs; ++c) {
    const Eigen::Index n = 1 + c % max_dim;
    const CommutingPair pair = random_commuting_pair(n, rng);
    const GaussianTarget target = GaussianTarget::centered(pair.covariance);
    const SpectralSystem optimal(target, MassMatrix::from_inverse(pair.covariance));
    const SpectralSystem other(target, MassMatrix::from_matrix(pair.mass));

    TheoremCase tc;
    tc.dim = n;
    tc.cell = cell;
    double best = -std::numeric_limits<double>::infinity();
    for (int k = 1; k <= grid; ++k) {
      const auto value = optimal.log_det_conditional_cov(k * cell);
      if (value && *value > best) {
        best = *value;
        tc.best_time = k * cell;
      }
    }
    tc.covariance_error =
        (optimal.conditional_covariance(kPi / 2.0) - pair.covariance).cwiseAbs().maxCoeff();

    // A random commuting mass has its own periods, so search a longer horizon.
    double other_best = -std::numeric_limits<double>::infinity();
    for (int k = 1; k <= 8 * grid; ++k) {
      const auto value = other.log_det_conditional_cov(k * cell);
      if (value) other_best = std::max(other_best, *value);
    }
    tc.random_mass_gap = best - other_best;
    cases.push_back(tc);
  }
  return cases;
}

}  // namespace mces
