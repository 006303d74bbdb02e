#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include <Eigen/Dense>

#include "mces/sampler.hpp"

namespace mces {

/// Lag-k sample autocorrelation, normalized by n (biased) against the series
/// mean. A constant series has autocorrelation 0 at every lag k >= 1.
double autocorrelation(const Eigen::VectorXd& series, Eigen::Index k);

/// Autocorrelations for lags 0..max_lag, computed with a zero-padded FFT.
Eigen::VectorXd autocorrelations(const Eigen::VectorXd& series, Eigen::Index max_lag);

bool is_constant(const Eigen::VectorXd& series);

/// n / (1 + 2 sum_k rho(k)) with the sum truncated by Geyer's initial positive
/// sequence rule; clamped to (0, n]. Requires at least 10 points and a
/// non-constant series.
double ess(const Eigen::VectorXd& series);

struct ESSReport {
  Eigen::VectorXd ess;
  Eigen::VectorXd ess_per_l;
  double mean_steps = 0.0;
  Eigen::Index n_samples = 0;
};

/// Per-dimension ESS over rows [discard, size) divided by the mean L over
/// the same window.
ESSReport ess_per_l(const Trace& trace, Eigen::Index discard);

/// CSV `dim,ess,ess_per_l`.
void write_ess_csv(std::ostream& out, const ESSReport& report);

/// Mean over dimensions of E_i / E'_i.
double performance_ratio(const Eigen::VectorXd& e, const Eigen::VectorXd& e_reference);

struct PosteriorSummary {
  Eigen::VectorXd mean;
  Eigen::VectorXd sd;  // n - 1 divisor
};

PosteriorSummary summarize(const Eigen::MatrixXd& samples);
PosteriorSummary summarize(const Trace& trace, Eigen::Index discard);

double pearson_correlation(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

struct KSResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// One-sample Kolmogorov-Smirnov test against a continuous CDF.
KSResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf);

double standard_normal_cdf(double x);

}  // namespace mces
