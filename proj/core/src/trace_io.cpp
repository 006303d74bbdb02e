#include "mces/trace_io.hpp"

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mces/config_file.hpp"
#include "mces/error.hpp"

namespace mces {
namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

void write_trace_csv(std::ostream& out, const Trace& trace) {
  out << "iter,accepted,L,delta_H";
  for (Eigen::Index j = 0; j < trace.dim(); ++j) out << ",x_" << j;
  out << '\n';
  std::string row;
  for (Eigen::Index i = 0; i < trace.size(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    row = std::to_string(i);
    row += trace.accepted()[k] ? ",1," : ",0,";
    row += std::to_string(trace.steps()[k]);
    row += ',';
    row += format_double(trace.delta_h()[k]);
    for (Eigen::Index j = 0; j < trace.dim(); ++j) {
      row += ',';
      row += format_double(trace.samples()(i, j));
    }
    row += '\n';
    out << row;
  }
}

Trace read_trace_csv(std::istream& in, const std::string& source) {
  std::string line;
  if (!std::getline(in, line)) throw FormatError(source + ": empty trace file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv(line);
  if (header.size() < 5 || header[0] != "iter" || header[1] != "accepted" ||
      header[2] != "L" || header[3] != "delta_H") {
    throw FormatError(source + ": header must start with iter,accepted,L,delta_H,x_0");
  }
  const auto dim = static_cast<Eigen::Index>(header.size() - 4);
  for (Eigen::Index j = 0; j < dim; ++j) {
    if (header[static_cast<std::size_t>(4 + j)] != "x_" + std::to_string(j)) {
      throw FormatError(source + ": unexpected column name '" +
                        header[static_cast<std::size_t>(4 + j)] + "'");
    }
  }

  std::vector<double> values;
  std::vector<bool> accepted;
  std::vector<int> steps;
  std::vector<double> delta_h;
  long row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv(line);
    const std::string where = source + ": row " + std::to_string(row + 1);
    if (fields.size() != header.size()) {
      throw FormatError(where + ": expected " + std::to_string(header.size()) +
                        " columns, got " + std::to_string(fields.size()));
    }
    if (parse_long(fields[0], "iter") != row) throw FormatError(where + ": iter out of order");
    const long acc = parse_long(fields[1], "accepted");
    if (acc != 0 && acc != 1) throw FormatError(where + ": accepted must be 0 or 1");
    accepted.push_back(acc == 1);
    steps.push_back(static_cast<int>(parse_long(fields[2], "L")));
    delta_h.push_back(parse_double(fields[3], "delta_H"));
    for (Eigen::Index j = 0; j < dim; ++j) {
      values.push_back(parse_double(fields[static_cast<std::size_t>(4 + j)], "x"));
    }
    ++row;
  }
  Eigen::MatrixXd samples(row, dim);
  for (long i = 0; i < row; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      samples(i, j) = values[static_cast<std::size_t>(i * dim + j)];
    }
  }
  return Trace(std::move(samples), std::move(accepted), std::move(steps), std::move(delta_h));
}

void save_trace(const std::filesystem::path& path, const Trace& trace) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  write_trace_csv(out, trace);
  if (!out) throw FormatError("write failed for " + path.string());
}

Trace load_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open trace file " + path.string());
  return read_trace_csv(in, path.string());
}

void save_config_snapshot(const std::filesystem::path& path, const MCESConfig& config) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  out << "# sampler configuration\n";
  write_key_values(out, to_key_values(config));
}

MCESConfig load_config_snapshot(const std::filesystem::path& path) {
  return config_from_key_values(read_key_values(path));
}

}  // namespace mces
