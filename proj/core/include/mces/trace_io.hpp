#pragma once

#include <filesystem>
#include <iosfwd>

#include "mces/sampler.hpp"

namespace mces {

/// CSV with header `iter,accepted,L,delta_H,x_0,...,x_{n-1}`; numbers carry
/// 17 significant digits so a read back reproduces the trace bit for bit.
void write_trace_csv(std::ostream& out, const Trace& trace);
Trace read_trace_csv(std::istream& in, const std::string& source = "<stream>");

void save_trace(const std::filesystem::path& path, const Trace& trace);
Trace load_trace(const std::filesystem::path& path);

void save_config_snapshot(const std::filesystem::path& path, const MCESConfig& config);
MCESConfig load_config_snapshot(const std::filesystem::path& path);

}  // namespace mces
