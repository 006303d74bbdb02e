#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include <Eigen/Dense>

#include "mces/models/eight_schools.hpp"
#include "mces/models/lgcp.hpp"
#include "mces/models/logistic.hpp"

namespace mces {

/// Directory holding the bundled data files.
std::filesystem::path default_data_dir();

/// Two lines of 8 comma-separated numbers: effects y, then standard errors.
EightSchoolsData parse_eight_schools(std::istream& in, const std::string& source);
EightSchoolsData load_eight_schools(const std::filesystem::path& path);

/// Raw numeric German credit table: whitespace separated, 24 integer features
/// followed by a label in {1, 2}. Features are standardized to mean 0 and unit
/// sample variance, an intercept column of ones is prepended, and labels map
/// 1 (good) -> 0 and 2 (bad) -> 1.
LogisticRegressionModel german_credit_from_table(const Eigen::MatrixXd& table);
LogisticRegressionModel load_german_credit(const std::filesystem::path& path,
                                           Eigen::Index expected_rows = 1000);

/// Whitespace-separated numeric table with a fixed column count.
Eigen::MatrixXd read_numeric_table(const std::filesystem::path& path, Eigen::Index columns);

/// Synthetic LGCP data drawn from the model's own generative process.
struct LGCPGroundTruth {
  Eigen::MatrixXd latent;     // d x d, x_ij
  Eigen::MatrixXd intensity;  // d x d, s exp(x_ij)
  Eigen::MatrixXd counts;     // d x d, Poisson(intensity)
};

LGCPGroundTruth generate_lgcp_data(const LGCPParams& params, std::uint64_t seed);

/// Writes counts.csv, latent.csv and intensity.csv into `dir`.
void save_lgcp_data(const std::filesystem::path& dir, const LGCPGroundTruth& truth);
LGCPGroundTruth load_lgcp_data(const std::filesystem::path& dir);

void write_grid_csv(const std::filesystem::path& path, const Eigen::MatrixXd& grid,
                    bool integers);
Eigen::MatrixXd read_grid_csv(const std::filesystem::path& path);

}  // namespace mces
