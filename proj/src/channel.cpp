#include "seehp/channel.hpp"

#include <cmath>

#include "seehp/rng.hpp"

namespace seehp {

namespace {

// Stream tags so fading, shadowing and precoder draws never alias.
constexpr std::uint64_t kFadingStream = 0x01;
constexpr std::uint64_t kShadowStream = 0x02;

void fill_complex_gaussian(Eigen::MatrixXcd& m, Rng& rng) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) m(i, j) = rng.complex_gaussian();
}

}  // namespace

SmallScaleFading sample_small_scale(const ScenarioGeometry& geometry, std::uint64_t seed) {
  geometry.validate();
  Rng rng(derive_seed(seed, kFadingStream));
  SmallScaleFading f;
  f.actuators.resize(geometry.num_tx_antennas, geometry.num_actuators);
  f.eaves.resize(geometry.num_tx_antennas, geometry.num_eaves_antennas);
  fill_complex_gaussian(f.actuators, rng);
  fill_complex_gaussian(f.eaves, rng);
  return f;
}

double path_loss(double distance_m, double exponent, double shadowing_db) {
  if (!(distance_m > 0.0)) throw std::domain_error("path_loss: distance must be > 0");
  const double kappa = std::pow(10.0, shadowing_db / 10.0);
  return kappa / std::pow(distance_m, exponent);
}

ChannelRealization assemble_channels(const ScenarioGeometry& geometry, std::uint64_t seed) {
  SmallScaleFading fading = sample_small_scale(geometry, seed);

  // Shadowing draws are independent per link; one extra draw for the
  // eavesdropper link.
  Rng shadow(derive_seed(seed, kShadowStream));
  ChannelRealization ch;
  ch.beta_actuators.resize(geometry.num_actuators);
  for (int k = 0; k < geometry.num_actuators; ++k) {
    const double shadow_db =
        geometry.shadowing_enabled ? geometry.shadowing_spread_db * shadow.gaussian() : 0.0;
    ch.beta_actuators(k) =
        path_loss(geometry.actuator_distances_m[static_cast<std::size_t>(k)],
                  geometry.path_loss_exponent, shadow_db);
  }
  const double eaves_shadow_db =
      geometry.shadowing_enabled ? geometry.shadowing_spread_db * shadow.gaussian() : 0.0;
  ch.beta_eaves =
      path_loss(geometry.eaves_distance_m, geometry.path_loss_exponent, eaves_shadow_db);

  ch.actuators = std::move(fading.actuators);
  for (int k = 0; k < geometry.num_actuators; ++k)
    ch.actuators.col(k) *= std::sqrt(ch.beta_actuators(k));
  ch.eaves = std::move(fading.eaves);
  ch.eaves *= std::sqrt(ch.beta_eaves);
  return ch;
}

}  // namespace seehp
