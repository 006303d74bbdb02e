#include "mces/config_file.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>

#include "mces/error.hpp"

namespace mces {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

KeyValues parse_key_values(std::istream& in, const std::string& source) {
  KeyValues values;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw FormatError(source + ":" + std::to_string(number) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw FormatError(source + ":" + std::to_string(number) + ": empty key");
    }
    if (!values.emplace(key, value).second) {
      throw FormatError(source + ":" + std::to_string(number) + ": duplicate key '" + key + "'");
    }
  }
  return values;
}

KeyValues read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open config file " + path.string());
  return parse_key_values(in, path.string());
}

void write_key_values(std::ostream& out, const KeyValues& values) {
  for (const auto& [key, value] : values) out << key << " = " << value << '\n';
}

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value,
                                 std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& text, const std::string& key) {
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw FormatError("value for '" + key + "' is not a number: '" + text + "'");
  }
  return value;
}

long parse_long(const std::string& text, const std::string& key) {
  long value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw FormatError("value for '" + key + "' is not an integer: '" + text + "'");
  }
  return value;
}

KeyValues to_key_values(const MCESConfig& c) {
  return {
      {"Acc_min", format_double(c.acc_min)},
      {"N0", std::to_string(c.n0)},
      {"N_max", std::to_string(c.n_max)},
      {"N_M", std::to_string(c.n_m)},
      {"N_L", std::to_string(c.n_l)},
      {"L0", std::to_string(c.l0)},
      {"L_max", std::to_string(c.l_max)},
      {"rho", format_double(c.rho)},
      {"I_max", std::to_string(c.i_max)},
      {"T", format_double(c.integration_time)},
      {"seed", std::to_string(c.seed)},
      {"warmstart_L", std::to_string(c.warmstart_steps)},
      {"literal_rollback", c.literal_rollback ? "1" : "0"},
  };
}

bool apply_config_key(MCESConfig& c, const std::string& key, const std::string& value) {
  if (key == "Acc_min") {
    c.acc_min = parse_double(value, key);
  } else if (key == "N0") {
    c.n0 = parse_long(value, key);
  } else if (key == "N_max") {
    c.n_max = parse_long(value, key);
  } else if (key == "N_M") {
    c.n_m = parse_long(value, key);
  } else if (key == "N_L") {
    c.n_l = parse_long(value, key);
  } else if (key == "L0") {
    c.l0 = static_cast<int>(parse_long(value, key));
  } else if (key == "L_max") {
    c.l_max = static_cast<int>(parse_long(value, key));
  } else if (key == "rho") {
    c.rho = parse_double(value, key);
  } else if (key == "I_max") {
    c.i_max = static_cast<int>(parse_long(value, key));
  } else if (key == "T") {
    c.integration_time = parse_double(value, key);
  } else if (key == "seed") {
    c.seed = static_cast<std::uint64_t>(parse_long(value, key));
  } else if (key == "warmstart_L") {
    c.warmstart_steps = static_cast<int>(parse_long(value, key));
  } else if (key == "literal_rollback") {
    c.literal_rollback = parse_long(value, key) != 0;
  } else {
    return false;
  }
  return true;
}

MCESConfig config_from_key_values(const KeyValues& values) {
  MCESConfig c;
  for (const auto& [key, value] : values) {
    if (!apply_config_key(c, key, value)) {
      throw FormatError("unknown sampler config key '" + key + "'");
    }
  }
  return c;
}

}  // namespace mces
