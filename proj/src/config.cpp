#include "seehp/config.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace seehp {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value) {
  throw ConfigError("invalid value for " + key + ": '" + value + "'");
}

/// Number with an optional unit suffix, converted to linear W / Hz /
/// dimensionless as the unit dictates. dB without a power reference is
/// returned in dB (only the shadowing spread uses it).
double parse_quantity(const std::string& raw, const std::string& key) {
  const std::string s = trim(raw);
  std::size_t unit_begin = s.size();
  while (unit_begin > 0) {
    const char c = s[unit_begin - 1];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '/')
      --unit_begin;
    else
      break;
  }
  const std::string num = trim(s.substr(0, unit_begin));
  const std::string unit = s.substr(unit_begin);
  if (num.empty()) bad_value(key, raw);
  char* end = nullptr;
  const double x = std::strtod(num.c_str(), &end);
  if (end != num.c_str() + num.size()) bad_value(key, raw);

  if (unit.empty() || unit == "W" || unit == "Hz" || unit == "dB") return x;
  if (unit == "mW") return x * 1e-3;
  if (unit == "uW") return x * 1e-6;
  if (unit == "dBW") return std::pow(10.0, x / 10.0);
  if (unit == "dBm") return std::pow(10.0, (x - 30.0) / 10.0);
  if (unit == "kHz") return x * 1e3;
  if (unit == "MHz") return x * 1e6;
  if (unit == "GHz") return x * 1e9;
  throw ConfigError("unknown unit '" + unit + "' for " + key);
}

int parse_int(const std::string& raw, const std::string& key) {
  const double v = parse_quantity(raw, key);
  const int i = static_cast<int>(std::lround(v));
  if (std::fabs(v - i) > 1e-9) bad_value(key, raw);
  return i;
}

bool parse_flag(const std::string& raw, const std::string& key) {
  const std::string v = trim(raw);
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  bad_value(key, raw);
}

/// Spectral density in dBm/Hz; the number is kept in the dB domain and
/// converted against the bandwidth once both are known.
double parse_psd(const std::string& raw, const std::string& key) {
  const std::string s = trim(raw);
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (end == s.c_str()) bad_value(key, raw);
  const std::string unit = trim(std::string(end));
  if (!unit.empty() && unit != "dBm/Hz") throw ConfigError("unknown unit '" + unit + "' for " + key);
  return x;
}

struct Builder {
  ParsedConfig cfg;
  double noise_psd_dbm_hz = -174.0;
  bool explicit_noise_power = false;
  bool values_set = false;
  std::vector<double> distances;
  bool distances_set = false;

  void apply(const std::string& key, const std::string& value);
  ParsedConfig finalize();
};

void Builder::apply(const std::string& key, const std::string& value) {
  ScenarioGeometry& g = cfg.base.geometry;
  HardwareProfile& hw = cfg.base.hw;
  SolverParams& sp = cfg.base.solver;
  SweepSpec& sw = cfg.sweep;

  if (key == "geometry.n_tx") g.num_tx_antennas = parse_int(value, key);
  else if (key == "geometry.n_rf") g.num_rf_chains = parse_int(value, key);
  else if (key == "geometry.k") g.num_actuators = parse_int(value, key);
  else if (key == "geometry.m") g.num_eaves_antennas = parse_int(value, key);
  else if (key == "geometry.actuator_distance") {
    distances.clear();
    for (const auto& tok : split(value, ','))
      distances.push_back(parse_quantity(tok, key));
    distances_set = true;
  } else if (key == "geometry.eaves_distance") g.eaves_distance_m = parse_quantity(value, key);
  else if (key == "geometry.path_loss_exponent") g.path_loss_exponent = parse_quantity(value, key);
  else if (key == "geometry.shadowing") g.shadowing_enabled = parse_flag(value, key);
  else if (key == "geometry.shadowing_spread") g.shadowing_spread_db = parse_quantity(value, key);
  else if (key == "hardware.p_max") hw.max_transmit_power_w = parse_quantity(value, key);
  else if (key == "hardware.c0_sec") hw.min_secrecy_bps_hz = parse_quantity(value, key);
  else if (key == "hardware.p_c") hw.static_power_w = parse_quantity(value, key);
  else if (key == "hardware.p_rf") hw.rf_chain_power_w = parse_quantity(value, key);
  else if (key == "hardware.p_ps") hw.phase_shifter_power_w = parse_quantity(value, key);
  else if (key == "hardware.alpha") hw.amp_efficiency = parse_quantity(value, key);
  else if (key == "hardware.noise_psd") noise_psd_dbm_hz = parse_psd(value, key);
  else if (key == "hardware.noise_power") {
    hw.noise_power_w = parse_quantity(value, key);
    explicit_noise_power = true;
  } else if (key == "hardware.bandwidth") hw.bandwidth_hz = parse_quantity(value, key);
  else if (key == "solver.ratio_tol") sp.ratio_tol = parse_quantity(value, key);
  else if (key == "solver.ratio_max_iters") sp.ratio_max_iters = parse_int(value, key);
  else if (key == "solver.penalty_init") sp.penalty_init = parse_quantity(value, key);
  else if (key == "solver.penalty_growth") sp.penalty_growth = parse_quantity(value, key);
  else if (key == "solver.penalty_tol") sp.penalty_tol = parse_quantity(value, key);
  else if (key == "solver.penalty_max_iters") sp.penalty_max_iters = parse_int(value, key);
  else if (key == "solver.alternate_tol") sp.alternate_tol = parse_quantity(value, key);
  else if (key == "solver.alternate_max_iters") sp.alternate_max_iters = parse_int(value, key);
  else if (key == "solver.aux_margin") sp.aux_margin = parse_quantity(value, key);
  else if (key == "solver.dc_tol") sp.dc_tol = parse_quantity(value, key);
  else if (key == "solver.dc_max_iters") sp.dc_max_iters = parse_int(value, key);
  else if (key == "solver.eta_init") sp.eta_init = parse_quantity(value, key);
  else if (key == "sweep.parameter") sw.parameter = sweep_parameter_from_name(trim(value));
  else if (key == "sweep.values") {
    sw.values.clear();
    for (const auto& tok : split(value, ',')) sw.values.push_back(parse_quantity(tok, key));
    values_set = true;
  } else if (key == "sweep.trials") sw.trials = parse_int(value, key);
  else if (key == "sweep.schemes") {
    sw.schemes.clear();
    for (const auto& tok : split(value, ',')) sw.schemes.push_back(tok);
  } else if (key == "sweep.seed") sw.root_seed = static_cast<std::uint64_t>(parse_int(value, key));
  else if (key == "sweep.power_mode") {
    const std::string v = trim(value);
    if (v == "statistical") sw.normalization = PowerNormalization::kStatistical;
    else if (v == "exact") sw.normalization = PowerNormalization::kExact;
    else bad_value(key, value);
  } else {
    throw ConfigError("unknown config key: " + key);
  }
}

ParsedConfig Builder::finalize() {
  ScenarioGeometry& g = cfg.base.geometry;
  HardwareProfile& hw = cfg.base.hw;

  if (distances_set) {
    if (distances.size() == 1)
      g.actuator_distances_m.assign(static_cast<std::size_t>(g.num_actuators),
                                    distances[0]);
    else
      g.actuator_distances_m = distances;
  } else {
    g.actuator_distances_m.assign(static_cast<std::size_t>(g.num_actuators), 50.0);
  }
  if (!explicit_noise_power)
    hw.noise_power_w = HardwareProfile::noise_from_psd(noise_psd_dbm_hz, hw.bandwidth_hz);
  if (!values_set) cfg.sweep.values = default_sweep_values(cfg.sweep.parameter);

  g.validate();
  hw.validate();
  cfg.base.solver.validate();
  return cfg;
}

}  // namespace

ParsedConfig parse_config_text(const std::string& text) {
  Builder b;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
    b.apply(key, value);
  }
  return b.finalize();
}

ParsedConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace seehp
