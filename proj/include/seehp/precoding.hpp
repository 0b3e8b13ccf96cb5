#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>

#include "seehp/channel.hpp"
#include "seehp/types.hpp"

namespace seehp {

/// Channel realization is too ill-conditioned for zero-forcing; the caller
/// resamples the trial.
class DegenerateChannel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Physical channels composed with the analog precoder; what the baseband
/// stage actually sees.
struct EquivalentChannels {
  Eigen::MatrixXcd actuators_h;  // K x N_RF, row k = h_k^H * F
  Eigen::MatrixXcd eaves_h;      // M x N_RF
};

/// How the signal precoder meets its per-stream power targets.
///  - Statistical: closed-form amplitude (exact in expectation over fading).
///  - Exact: each column rescaled so the radiated power matches per
///    realization.
enum class PowerNormalization { kStatistical, kExact };

/// Analog + baseband precoders for one realization.
struct PrecoderSet {
  Eigen::MatrixXcd rf;          // N_Tx x N_RF, constant-modulus entries
  Eigen::MatrixXcd signal;      // N_RF x K
  Eigen::MatrixXcd noise;       // N_RF x (N_RF - K)
  Eigen::VectorXd zeta;         // length K, realized diagonal gains
  PowerNormalization normalization = PowerNormalization::kStatistical;
};

/// Phase-only analog precoder: the first K columns conjugate-match the
/// actuator channel phases (entry magnitudes fixed at 1/sqrt(N_Tx)); the
/// spare columns carry i.i.d. uniform phases drawn from `seed`.
Eigen::MatrixXcd build_rf_precoder(const ChannelRealization& realization,
                                   const ScenarioGeometry& geometry, std::uint64_t seed);

EquivalentChannels equivalent_channels(const ChannelRealization& realization,
                                       const Eigen::MatrixXcd& rf);

/// Closed-form amplitude target for one stream at power `signal_w`.
double zf_amplitude(double signal_w, int num_tx_antennas);

/// Zero-forcing signal precoder with diagonal gains zeta_k. Throws
/// DegenerateChannel when the equivalent channel is rank deficient.
struct ZfResult {
  Eigen::MatrixXcd signal;  // N_RF x K
  Eigen::VectorXd zeta;     // length K
};
ZfResult zf_baseband(const EquivalentChannels& eq, const PowerAllocation& alloc,
                     const ScenarioGeometry& geometry);

/// Noise precoder spanning the right null space of the actuators' equivalent
/// channel, rescaled by one positive scalar so the radiated noise power
/// equals `an_w`.
Eigen::MatrixXcd an_baseband(const EquivalentChannels& eq, const Eigen::MatrixXcd& rf,
                             double an_w);

/// Full pipeline for one realization and power split.
PrecoderSet build_precoder_set(const ChannelRealization& realization,
                               const ScenarioGeometry& geometry,
                               const PowerAllocation& alloc, std::uint64_t seed,
                               PowerNormalization normalization =
                                   PowerNormalization::kStatistical);

}  // namespace seehp
