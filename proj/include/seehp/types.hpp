#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace seehp {

/// Raised when an input violates a documented model invariant. The message
/// names the violated invariant.
class InvariantError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Array geometry and link layout for one scenario.
///
/// The transmitter serves `num_actuators` single-antenna receivers through
/// `num_rf_chains` RF chains driving `num_tx_antennas` antennas; one
/// `num_eaves_antennas`-element eavesdropper listens in. The analog stage
/// leaves num_rf_chains - num_actuators spare dimensions for artificial
/// noise.
struct ScenarioGeometry {
  int num_tx_antennas = 110;
  int num_rf_chains = 50;
  int num_actuators = 40;
  int num_eaves_antennas = 30;
  std::vector<double> actuator_distances_m;  // length num_actuators
  double eaves_distance_m = 50.0;
  double path_loss_exponent = 4.6;
  double shadowing_spread_db = 9.2;  // std deviation of the dB-domain draw
  bool shadowing_enabled = false;

  /// Spare analog dimensions available to the noise precoder.
  int an_dimensions() const { return num_rf_chains - num_actuators; }

  /// Throws InvariantError naming the first violated invariant.
  void validate() const;

  /// Geometry with every receiver at the same distance.
  static ScenarioGeometry uniform(int n_tx, int n_rf, int k, int m,
                                  double distance_m = 50.0,
                                  double path_loss_exp = 4.6);
};

inline void ScenarioGeometry::validate() const {
  if (num_actuators < 1) throw InvariantError("K >= 1");
  if (!(num_actuators < num_rf_chains))
    throw InvariantError("K < N_RF");
  if (!(num_rf_chains <= num_tx_antennas))
    throw InvariantError("N_RF <= N_Tx");
  if (num_eaves_antennas < 1) throw InvariantError("M >= 1");
  if (static_cast<int>(actuator_distances_m.size()) != num_actuators)
    throw InvariantError("len(actuator_distances) == K");
  for (double d : actuator_distances_m)
    if (!(d > 0.0)) throw InvariantError("actuator distances > 0");
  if (!(eaves_distance_m > 0.0)) throw InvariantError("eaves distance > 0");
  if (!(path_loss_exponent > 0.0)) throw InvariantError("path-loss exponent > 0");
  if (shadowing_enabled && !(shadowing_spread_db > 0.0))
    throw InvariantError("shadowing spread > 0");
}

inline ScenarioGeometry ScenarioGeometry::uniform(int n_tx, int n_rf, int k, int m,
                                                  double distance_m,
                                                  double path_loss_exp) {
  ScenarioGeometry g;
  g.num_tx_antennas = n_tx;
  g.num_rf_chains = n_rf;
  g.num_actuators = k;
  g.num_eaves_antennas = m;
  g.actuator_distances_m.assign(static_cast<std::size_t>(k), distance_m);
  g.eaves_distance_m = distance_m;
  g.path_loss_exponent = path_loss_exp;
  g.validate();
  return g;
}

/// Power-model constants of the transmitter hardware plus the radio-level
/// scenario constants (bandwidth, noise floor, budget, secrecy target).
/// All fields are linear units (W, Hz); dB-domain inputs are converted at
/// the config boundary.
struct HardwareProfile {
  double amp_efficiency = 0.38;          // power amplifier efficiency, (0, 1]
  double rf_chain_power_w = 0.030;       // per RF chain
  double phase_shifter_power_w = 1e-6;   // per phase shifter
  double static_power_w = 15.0;          // constant baseline draw
  double bandwidth_hz = 20e6;
  double noise_power_w = 7.962143411069941e-14;  // -174 dBm/Hz over 20 MHz
  double max_transmit_power_w = 0.31622776601683794;  // -5 dBW
  double min_secrecy_bps_hz = 3.0;

  void validate() const;

  /// Noise power from a spectral density in dBm/Hz over the profile bandwidth.
  static double noise_from_psd(double psd_dbm_hz, double bandwidth_hz) {
    return std::pow(10.0, (psd_dbm_hz - 30.0) / 10.0) * bandwidth_hz;
  }
};

inline void HardwareProfile::validate() const {
  if (!(amp_efficiency > 0.0 && amp_efficiency <= 1.0))
    throw InvariantError("0 < amp efficiency <= 1");
  if (!(rf_chain_power_w >= 0.0)) throw InvariantError("RF chain power >= 0");
  if (!(phase_shifter_power_w >= 0.0)) throw InvariantError("phase shifter power >= 0");
  if (!(static_power_w >= 0.0)) throw InvariantError("static power >= 0");
  if (!(bandwidth_hz > 0.0)) throw InvariantError("bandwidth > 0");
  if (!(noise_power_w > 0.0)) throw InvariantError("noise power > 0");
  if (!(max_transmit_power_w > 0.0)) throw InvariantError("max transmit power > 0");
  if (!(min_secrecy_bps_hz >= 0.0)) throw InvariantError("min secrecy >= 0");
}

/// Transmit-side power split: per-actuator signal powers plus the artificial
/// noise budget. All watts.
struct PowerAllocation {
  std::vector<double> signal_w;  // length K
  double an_w = 0.0;

  double signal_total() const {
    double s = 0.0;
    for (double p : signal_w) s += p;
    return s;
  }
  double total() const { return signal_total() + an_w; }

  void validate() const {
    for (double p : signal_w)
      if (!(p >= 0.0)) throw InvariantError("signal powers >= 0");
    if (!(an_w >= 0.0)) throw InvariantError("AN power >= 0");
  }

  static PowerAllocation equal_split(int k, double signal_total, double an) {
    PowerAllocation a;
    a.signal_w.assign(static_cast<std::size_t>(k), signal_total / k);
    a.an_w = an;
    return a;
  }
};

}  // namespace seehp
