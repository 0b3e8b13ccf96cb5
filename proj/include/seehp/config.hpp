#pragma once

#include <stdexcept>
#include <string>

#include "seehp/sweep.hpp"

namespace seehp {

/// Config file problem: unknown key, malformed value, or an invariant
/// violation. The message names the offending key or invariant.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParsedConfig {
  BaseConfig base;
  SweepSpec sweep;
};

/// Parses a `key = value` document with `#` comments and dotted section
/// prefixes (geometry., hardware., solver., sweep.). Unset keys take the
/// stock defaults. Power values accept unit suffixes (W, mW, uW, dBW, dBm),
/// frequencies accept Hz/kHz/MHz/GHz, and the noise density accepts dBm/Hz;
/// everything is converted to linear W/Hz on the spot.
ParsedConfig parse_config_text(const std::string& text);
ParsedConfig parse_config(const std::string& path);

}  // namespace seehp
