#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

#include "mces/sampler.hpp"

namespace mces {

/// Flat `key = value` text, one entry per line; `#` starts a comment.
using KeyValues = std::map<std::string, std::string>;

KeyValues parse_key_values(std::istream& in, const std::string& source = "<stream>");
KeyValues read_key_values(const std::filesystem::path& path);
void write_key_values(std::ostream& out, const KeyValues& values);

/// Shortest round-trip-safe text for a double (17 significant digits).
std::string format_double(double value);
double parse_double(const std::string& text, const std::string& key);
long parse_long(const std::string& text, const std::string& key);

/// Keys use the algorithm's own symbols: Acc_min, N0, N_max, N_M, N_L, L0,
/// L_max, rho, I_max, T, seed, warmstart_L.
KeyValues to_key_values(const MCESConfig& config);

/// Applies `key` to `config` if it is an MCESConfig key; returns false for
/// keys it does not know.
bool apply_config_key(MCESConfig& config, const std::string& key, const std::string& value);

MCESConfig config_from_key_values(const KeyValues& values);

}  // namespace mces
