#pragma once

#include <Eigen/Dense>
#include <cstdint>

#include "seehp/types.hpp"

namespace seehp {

/// One Monte Carlo draw of all downlink channels. Column k of `actuators`
/// is the full channel to actuator k (path loss folded in); `eaves` stacks
/// the eavesdropper's antennas the same way.
struct ChannelRealization {
  Eigen::MatrixXcd actuators;       // N_Tx x K
  Eigen::MatrixXcd eaves;           // N_Tx x M
  Eigen::VectorXd beta_actuators;   // linear power gains, length K
  double beta_eaves = 1.0;
};

/// Small-scale fading only: i.i.d. unit-variance complex Gaussian entries.
struct SmallScaleFading {
  Eigen::MatrixXcd actuators;  // N_Tx x K
  Eigen::MatrixXcd eaves;      // N_Tx x M
};

SmallScaleFading sample_small_scale(const ScenarioGeometry& geometry, std::uint64_t seed);

/// Distance-based linear power gain 1 / l^chi, optionally scaled by a
/// lognormal shadowing draw with zero dB mean.
double path_loss(double distance_m, double exponent, double shadowing_db = 0.0);

ChannelRealization assemble_channels(const ScenarioGeometry& geometry, std::uint64_t seed);

}  // namespace seehp
