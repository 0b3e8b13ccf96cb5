#pragma once

#include <cstdint>
#include <stdexcept>

#include "seehp/precoding.hpp"
#include "seehp/types.hpp"

namespace seehp {

/// The closed-form eavesdropper bound is outside the domain where it means
/// anything (its log argument is nonpositive). The optimizer treats such
/// points as infeasible.
class InfeasibleApproximation : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Worst-case eavesdropper SINR is unbounded (no artificial noise radiated
/// toward a noiseless receiver).
class UndefinedBound : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// --- per-realization metrics ------------------------------------------------

/// Received SINR at actuator k: desired power over inter-stream interference
/// plus noise-precoder leakage plus thermal noise.
double exact_actuator_sinr(const EquivalentChannels& eq, const PrecoderSet& precoders,
                           double noise_power_w, int k);
double exact_actuator_sinr(const ChannelRealization& realization,
                           const PrecoderSet& precoders, double noise_power_w, int k);

/// Worst-case (noiseless) eavesdropper SINR for stream k, using the
/// pseudo-inverse of the received-noise Gram matrix. Throws UndefinedBound
/// when the noise precoder is zero.
double exact_eaves_sinr_upper(const EquivalentChannels& eq, const PrecoderSet& precoders,
                              int k);
double exact_eaves_sinr_upper(const ChannelRealization& realization,
                              const PrecoderSet& precoders, int k);

// --- closed forms -----------------------------------------------------------

/// Closed-form expressions the optimizer runs on. They depend on geometry
/// counts and the noise floor but not on a channel draw.
struct ClosedForms {
  double snr_coeff = 0.0;    // matched-array SNR per signal watt
  double leak_coeff = 0.0;   // eavesdropper ratio per (signal/AN) watt; signed
  double inv_alpha = 0.0;
  double fixed_power_w = 0.0;  // RF chains + phase shifters + static draw
  double bandwidth_hz = 0.0;
  int num_actuators = 0;

  ClosedForms() = default;
  ClosedForms(const ScenarioGeometry& geometry, const HardwareProfile& hw);

  double actuator_capacity(double signal_w) const;  // bit/s/Hz
  double sum_capacity(const PowerAllocation& alloc) const;

  /// Eavesdropper capacity bound as a function of total signal power and AN
  /// power. May be negative. Throws InfeasibleApproximation outside its
  /// domain. `nullable` via try_eaves_capacity for solver hot paths.
  double eaves_capacity(double signal_total_w, double an_w) const;
  bool try_eaves_capacity(double signal_total_w, double an_w, double& out) const;

  /// Unclamped secrecy capacity (sum capacity minus the eavesdropper bound);
  /// the quantity the optimizer constrains and maximizes.
  double secrecy(const PowerAllocation& alloc) const;

  double total_power(const PowerAllocation& alloc) const;
  double secure_ee(const PowerAllocation& alloc) const;  // bit/J
};

double closed_actuator_capacity(double signal_w, const HardwareProfile& hw,
                                int num_tx_antennas);

/// Eavesdropper capacity bound with the per-stream power average. The
/// `average_streams=false` variant divides by the AN power alone (the
/// alternate form noted in the derivation chain); the averaged form is
/// canonical everywhere else in this library.
double closed_eaves_capacity(const PowerAllocation& alloc, const ScenarioGeometry& geometry,
                             bool average_streams = true);

/// Secrecy capacity lower bound with the nonnegativity clamp applied to the
/// eavesdropped stream.
double secrecy_capacity_lower(const PowerAllocation& alloc, const ScenarioGeometry& geometry,
                              const HardwareProfile& hw, int eavesdropped_index = 0);

double total_power(const PowerAllocation& alloc, const HardwareProfile& hw,
                   const ScenarioGeometry& geometry);

double secure_ee(const PowerAllocation& alloc, const ScenarioGeometry& geometry,
                 const HardwareProfile& hw);

// --- link-level evaluation ----------------------------------------------------

/// Exact metrics of one realization under a given power split: capacities
/// from the realized SINRs, secrecy with the clamp at the eavesdropped
/// stream, energy efficiency against the nominal power model.
struct ExactLinkMetrics {
  double secrecy_bps_hz = 0.0;
  double ee_bits_per_joule = 0.0;
  double eaves_capacity_bps_hz = 0.0;
};

ExactLinkMetrics evaluate_exact_link(const ChannelRealization& realization,
                                     const ScenarioGeometry& geometry,
                                     const HardwareProfile& hw,
                                     const PowerAllocation& alloc, std::uint64_t seed,
                                     PowerNormalization normalization =
                                         PowerNormalization::kStatistical,
                                     int eavesdropped_index = 0);

}  // namespace seehp
