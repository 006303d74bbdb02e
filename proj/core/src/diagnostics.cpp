#include "mces/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <ostream>

#include <unsupported/Eigen/FFT>

#include "mces/config_file.hpp"
#include "mces/error.hpp"

namespace mces {

bool is_constant(const Eigen::VectorXd& series) {
  return series.size() == 0 || series.maxCoeff() == series.minCoeff();
}

double autocorrelation(const Eigen::VectorXd& series, Eigen::Index k) {
  const Eigen::Index n = series.size();
  require(k >= 0 && k < n, "autocorrelation: lag out of range");
  if (k == 0) return 1.0;
  if (is_constant(series)) return 0.0;
  const Eigen::VectorXd centered = series.array() - series.mean();
  const double c0 = centered.squaredNorm();
  const double ck = centered.head(n - k).dot(centered.tail(n - k));
  return ck / c0;
}

Eigen::VectorXd autocorrelations(const Eigen::VectorXd& series, Eigen::Index max_lag) {
  const Eigen::Index n = series.size();
  require(max_lag >= 0 && max_lag < n, "autocorrelations: lag out of range");
  Eigen::VectorXd rho = Eigen::VectorXd::Zero(max_lag + 1);
  rho[0] = 1.0;
  if (is_constant(series)) return rho;

  Eigen::Index padded = 1;
  while (padded < 2 * n) padded <<= 1;
  std::vector<double> buffer(static_cast<std::size_t>(padded), 0.0);
  const double mean = series.mean();
  for (Eigen::Index i = 0; i < n; ++i) buffer[static_cast<std::size_t>(i)] = series[i] - mean;

  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spectrum;
  fft.fwd(spectrum, buffer);
  for (auto& c : spectrum) c = std::norm(c);
  std::vector<double> acov;
  fft.inv(acov, spectrum);
  const double c0 = acov[0];
  for (Eigen::Index k = 1; k <= max_lag; ++k) rho[k] = acov[static_cast<std::size_t>(k)] / c0;
  return rho;
}

double ess(const Eigen::VectorXd& series) {
  const Eigen::Index n = series.size();
  require(n >= 10, "ess: need at least 10 samples");
  if (is_constant(series)) throw NumericalError("ess: constant series");
  const Eigen::VectorXd rho = autocorrelations(series, n - 1);
  // tau = -1 + 2 sum_j (rho(2j) + rho(2j+1)) over the initial positive pairs
  double tau = -1.0;
  for (Eigen::Index lag = 0; lag + 1 < n; lag += 2) {
    const double pair = rho[lag] + rho[lag + 1];
    if (!(pair > 0.0)) break;
    tau += 2.0 * pair;
  }
  const double nd = static_cast<double>(n);
  if (!(tau > 0.0)) return nd;
  return std::min(nd, nd / tau);
}

ESSReport ess_per_l(const Trace& trace, Eigen::Index discard) {
  require(discard >= 0 && discard < trace.size(), "ess_per_l: discard must be < trace length");
  ESSReport report;
  report.n_samples = trace.size() - discard;
  double total_steps = 0.0;
  for (Eigen::Index i = discard; i < trace.size(); ++i) {
    total_steps += trace.steps()[static_cast<std::size_t>(i)];
  }
  report.mean_steps = total_steps / static_cast<double>(report.n_samples);
  report.ess.resize(trace.dim());
  for (Eigen::Index j = 0; j < trace.dim(); ++j) {
    report.ess[j] = ess(trace.samples().col(j).tail(report.n_samples));
  }
  report.ess_per_l = report.ess / report.mean_steps;
  return report;
}

void write_ess_csv(std::ostream& out, const ESSReport& report) {
  out << "dim,ess,ess_per_l\n";
  for (Eigen::Index j = 0; j < report.ess.size(); ++j) {
    out << j << ',' << format_double(report.ess[j]) << ','
        << format_double(report.ess_per_l[j]) << '\n';
  }
}

double performance_ratio(const Eigen::VectorXd& e, const Eigen::VectorXd& e_reference) {
  require(e.size() == e_reference.size() && e.size() > 0,
          "performance_ratio: vectors must have equal, non-zero length");
  if ((e_reference.array() <= 0.0).any()) {
    throw ContractViolation("performance_ratio: reference values must be > 0");
  }
  return (e.array() / e_reference.array()).mean();
}

PosteriorSummary summarize(const Eigen::MatrixXd& samples) {
  require(samples.rows() >= 1, "summarize: no samples");
  PosteriorSummary s;
  s.mean = samples.colwise().mean().transpose();
  s.sd = Eigen::VectorXd::Zero(samples.cols());
  if (samples.rows() >= 2) {
    const Eigen::MatrixXd centered = samples.rowwise() - s.mean.transpose();
    s.sd = (centered.colwise().squaredNorm().transpose() /
            static_cast<double>(samples.rows() - 1))
               .cwiseSqrt();
  }
  return s;
}

PosteriorSummary summarize(const Trace& trace, Eigen::Index discard) {
  require(discard >= 0 && discard < trace.size(), "summarize: discard must be < trace length");
  return summarize(trace.samples().bottomRows(trace.size() - discard));
}

double pearson_correlation(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  require(a.size() == b.size() && a.size() >= 2, "pearson_correlation: size mismatch");
  const Eigen::VectorXd ca = a.array() - a.mean();
  const Eigen::VectorXd cb = b.array() - b.mean();
  const double denom = std::sqrt(ca.squaredNorm() * cb.squaredNorm());
  if (denom == 0.0) throw NumericalError("pearson_correlation: constant input");
  return ca.dot(cb) / denom;
}

KSResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf) {
  require(!sample.empty(), "ks_test: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  // Asymptotic Kolmogorov tail with the small-sample correction of Stephens.
  const double root = std::sqrt(n);
  const double lambda = (root + 0.12 + 0.11 / root) * d;
  double q = 0.0;
  if (lambda < 0.2) {
    q = 1.0;
  } else {
    double sign = 1.0;
    for (int j = 1; j <= 100; ++j) {
      const double term = sign * std::exp(-2.0 * j * j * lambda * lambda);
      q += term;
      if (std::abs(term) < 1e-16) break;
      sign = -sign;
    }
    q = std::clamp(2.0 * q, 0.0, 1.0);
  }
  return {d, q};
}

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace mces
