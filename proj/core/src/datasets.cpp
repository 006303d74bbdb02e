#include "mces/datasets.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mces/config_file.hpp"
#include "mces/error.hpp"
#include "mces/random.hpp"

namespace mces {
namespace {

std::vector<double> parse_csv_numbers(const std::string& line, const std::string& where) {
  std::vector<double> values;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) {
    const auto first = field.find_first_not_of(" \t\r");
    const auto last = field.find_last_not_of(" \t\r");
    if (first == std::string::npos) throw FormatError(where + ": empty field");
    values.push_back(parse_double(field.substr(first, last - first + 1), where));
  }
  return values;
}

}  // namespace

std::filesystem::path default_data_dir() {
#ifdef MCES_DEFAULT_DATA_DIR
  return MCES_DEFAULT_DATA_DIR;
#else
  return "data";
#endif
}

EightSchoolsData parse_eight_schools(std::istream& in, const std::string& source) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rows.push_back(parse_csv_numbers(line, source));
  }
  if (rows.size() != 2 || rows[0].size() != 8 || rows[1].size() != 8) {
    throw FormatError(source +
                      ": expected two lines of 8 comma-separated numbers (y, then sigma)");
  }
  EightSchoolsData data;
  for (int i = 0; i < 8; ++i) {
    data.y[i] = rows[0][i];
    data.sigma[i] = rows[1][i];
    if (!(data.sigma[i] > 0.0)) throw FormatError(source + ": sigma values must be > 0");
  }
  return data;
}

EightSchoolsData load_eight_schools(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw FormatError("missing Eight Schools data file " + path.string() +
                      " (expected two lines of 8 comma-separated numbers: y, then sigma)");
  }
  return parse_eight_schools(in, path.string());
}

Eigen::MatrixXd read_numeric_table(const std::filesystem::path& path, Eigen::Index columns) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  std::vector<double> values;
  std::string line;
  Eigen::Index rows = 0;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    std::string token;
    Eigen::Index count = 0;
    while (ss >> token) {
      values.push_back(parse_double(token, path.string()));
      ++count;
    }
    if (count == 0) continue;
    if (count != columns) {
      throw FormatError(path.string() + ": row " + std::to_string(rows + 1) + " has " +
                        std::to_string(count) + " columns, expected " +
                        std::to_string(columns));
    }
    ++rows;
  }
  Eigen::MatrixXd table(rows, columns);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < columns; ++j) {
      table(i, j) = values[static_cast<std::size_t>(i * columns + j)];
    }
  }
  return table;
}

LogisticRegressionModel german_credit_from_table(const Eigen::MatrixXd& table) {
  require(table.cols() == 25, "german_credit_from_table: expected 25 columns");
  require(table.rows() >= 2, "german_credit_from_table: need at least two rows");
  const Eigen::Index rows = table.rows();
  Eigen::MatrixXd design(rows, 25);
  design.col(0).setOnes();
  for (Eigen::Index j = 0; j < 24; ++j) {
    const Eigen::VectorXd column = table.col(j);
    const double mean = column.mean();
    const double var =
        (column.array() - mean).square().sum() / static_cast<double>(rows - 1);
    if (!(var > 0.0)) {
      throw FormatError("german credit feature column " + std::to_string(j + 1) +
                        " is constant");
    }
    design.col(j + 1) = (column.array() - mean) / std::sqrt(var);
  }
  Eigen::VectorXd labels(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double raw = table(i, 24);
    if (raw != 1.0 && raw != 2.0) {
      throw FormatError("german credit label must be 1 or 2, got " + format_double(raw) +
                        " in row " + std::to_string(i + 1));
    }
    labels[i] = raw - 1.0;
  }
  return LogisticRegressionModel(std::move(design), std::move(labels));
}

LogisticRegressionModel load_german_credit(const std::filesystem::path& path,
                                           Eigen::Index expected_rows) {
  if (!std::filesystem::exists(path)) {
    throw FormatError("missing German credit data file " + path.string() +
                      " (expected UCI german.data-numeric: " + std::to_string(expected_rows) +
                      " rows of 24 integer features plus a label in {1,2})");
  }
  const Eigen::MatrixXd table = read_numeric_table(path, 25);
  if (table.rows() != expected_rows) {
    throw FormatError(path.string() + ": expected " + std::to_string(expected_rows) +
                      " rows, found " + std::to_string(table.rows()));
  }
  return german_credit_from_table(table);
}

LGCPGroundTruth generate_lgcp_data(const LGCPParams& params, std::uint64_t seed) {
  require(params.d >= 2, "generate_lgcp_data: d must be >= 2");
  const Eigen::MatrixXd cov = lgcp_prior_covariance(params);
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("generate_lgcp_data: prior covariance Cholesky failed");
  }
  Rng rng = make_rng(seed);
  const Eigen::VectorXd z = standard_normal(cov.rows(), rng);
  const Eigen::VectorXd x = (llt.matrixL() * z).array() + params.mu;

  const int d = params.d;
  LGCPGroundTruth truth;
  truth.latent.resize(d, d);
  truth.intensity.resize(d, d);
  truth.counts.resize(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const double xi = x[static_cast<Eigen::Index>(i) * d + j];
      const double lambda = params.s * std::exp(xi);
      truth.latent(i, j) = xi;
      truth.intensity(i, j) = lambda;
      truth.counts(i, j) =
          static_cast<double>(std::poisson_distribution<long>(lambda)(rng));
    }
  }
  return truth;
}

void write_grid_csv(const std::filesystem::path& path, const Eigen::MatrixXd& grid,
                    bool integers) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  for (Eigen::Index i = 0; i < grid.rows(); ++i) {
    for (Eigen::Index j = 0; j < grid.cols(); ++j) {
      if (j) out << ',';
      if (integers) {
        out << std::llround(grid(i, j));
      } else {
        out << format_double(grid(i, j));
      }
    }
    out << '\n';
  }
}

Eigen::MatrixXd read_grid_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open grid file " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    rows.push_back(parse_csv_numbers(line, path.string()));
  }
  if (rows.empty()) throw FormatError(path.string() + ": empty grid");
  const auto cols = rows.front().size();
  Eigen::MatrixXd grid(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw FormatError(path.string() + ": ragged row " + std::to_string(i + 1));
    }
    for (std::size_t j = 0; j < cols; ++j) {
      grid(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return grid;
}

void save_lgcp_data(const std::filesystem::path& dir, const LGCPGroundTruth& truth) {
  std::filesystem::create_directories(dir);
  write_grid_csv(dir / "counts.csv", truth.counts, true);
  write_grid_csv(dir / "latent.csv", truth.latent, false);
  write_grid_csv(dir / "intensity.csv", truth.intensity, false);
}

LGCPGroundTruth load_lgcp_data(const std::filesystem::path& dir) {
  LGCPGroundTruth truth;
  truth.counts = read_grid_csv(dir / "counts.csv");
  truth.latent = read_grid_csv(dir / "latent.csv");
  if (std::filesystem::exists(dir / "intensity.csv")) {
    truth.intensity = read_grid_csv(dir / "intensity.csv");
  }
  if (truth.counts.rows() != truth.counts.cols() ||
      truth.latent.rows() != truth.counts.rows() ||
      truth.latent.cols() != truth.counts.cols()) {
    throw FormatError(dir.string() + ": counts and latent grids must be d x d");
  }
  return truth;
}

}  // namespace mces
