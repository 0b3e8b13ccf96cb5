#include "seehp/metrics.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <numbers>

namespace seehp {

namespace {

constexpr double kPinvRelTol = 1e-12;

double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

}  // namespace

double exact_actuator_sinr(const EquivalentChannels& eq, const PrecoderSet& precoders,
                           double noise_power_w, int k) {
  const Eigen::RowVectorXcd row = eq.actuators_h.row(k);
  const Eigen::RowVectorXcd through_signal = row * precoders.signal;
  double desired = std::norm(through_signal(k));
  double interference = through_signal.squaredNorm() - desired;
  double leakage = (row * precoders.noise).squaredNorm();
  return desired / (interference + leakage + noise_power_w);
}

double exact_actuator_sinr(const ChannelRealization& realization,
                           const PrecoderSet& precoders, double noise_power_w, int k) {
  return exact_actuator_sinr(equivalent_channels(realization, precoders.rf), precoders,
                             noise_power_w, k);
}

double exact_eaves_sinr_upper(const EquivalentChannels& eq, const PrecoderSet& precoders,
                              int k) {
  if (precoders.noise.size() == 0 || precoders.noise.isZero(0.0))
    throw UndefinedBound("eaves SINR: no artificial noise radiated");

  // Received-noise matrix at the eavesdropper; its Gram pseudo-inverse comes
  // straight from the SVD.
  const Eigen::MatrixXcd received_noise = eq.eaves_h * precoders.noise;  // M x N_AN
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(received_noise, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double tol = kPinvRelTol * sv(0);

  const Eigen::VectorXcd received_signal = eq.eaves_h * precoders.signal.col(k);
  const Eigen::VectorXcd projected = svd.matrixU().adjoint() * received_signal;
  double sinr = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) sinr += std::norm(projected(i)) / (sv(i) * sv(i));
  return sinr;
}

double exact_eaves_sinr_upper(const ChannelRealization& realization,
                              const PrecoderSet& precoders, int k) {
  return exact_eaves_sinr_upper(equivalent_channels(realization, precoders.rf), precoders,
                                k);
}

ClosedForms::ClosedForms(const ScenarioGeometry& geometry, const HardwareProfile& hw) {
  const int n_an = geometry.an_dimensions();
  const double m = geometry.num_eaves_antennas;
  const double surplus = 1.0 - m / n_an;
  snr_coeff =
      std::numbers::pi * (geometry.num_tx_antennas - 1) / (4.0 * hw.noise_power_w);
  leak_coeff = surplus == 0.0 ? std::numeric_limits<double>::infinity()
                              : m / (geometry.num_actuators * surplus);
  inv_alpha = 1.0 / hw.amp_efficiency;
  fixed_power_w = geometry.num_rf_chains *
                      (hw.rf_chain_power_w +
                       geometry.num_tx_antennas * hw.phase_shifter_power_w) +
                  hw.static_power_w;
  bandwidth_hz = hw.bandwidth_hz;
  num_actuators = geometry.num_actuators;
}

double ClosedForms::actuator_capacity(double signal_w) const {
  return log2_1p(snr_coeff * signal_w);
}

double ClosedForms::sum_capacity(const PowerAllocation& alloc) const {
  double c = 0.0;
  for (double p : alloc.signal_w) c += actuator_capacity(p);
  return c;
}

bool ClosedForms::try_eaves_capacity(double signal_total_w, double an_w,
                                     double& out) const {
  if (signal_total_w == 0.0) {
    out = 0.0;
    return true;
  }
  if (!(an_w > 0.0) || !std::isfinite(leak_coeff)) return false;
  const double ratio = leak_coeff * signal_total_w / an_w;
  if (1.0 + ratio <= 0.0) return false;
  out = log2_1p(ratio);
  return true;
}

double ClosedForms::eaves_capacity(double signal_total_w, double an_w) const {
  double c;
  if (!try_eaves_capacity(signal_total_w, an_w, c))
    throw InfeasibleApproximation("eavesdropper capacity bound undefined here");
  return c;
}

double ClosedForms::secrecy(const PowerAllocation& alloc) const {
  return sum_capacity(alloc) - eaves_capacity(alloc.signal_total(), alloc.an_w);
}

double ClosedForms::total_power(const PowerAllocation& alloc) const {
  return inv_alpha * alloc.total() + fixed_power_w;
}

double ClosedForms::secure_ee(const PowerAllocation& alloc) const {
  const double secrecy_rate = bandwidth_hz * secrecy(alloc);
  return secrecy_rate / total_power(alloc);
}

double closed_actuator_capacity(double signal_w, const HardwareProfile& hw,
                                int num_tx_antennas) {
  const double gamma =
      std::numbers::pi * signal_w * (num_tx_antennas - 1) / (4.0 * hw.noise_power_w);
  return log2_1p(gamma);
}

double closed_eaves_capacity(const PowerAllocation& alloc, const ScenarioGeometry& geometry,
                             bool average_streams) {
  const int n_an = geometry.an_dimensions();
  const double m = geometry.num_eaves_antennas;
  const double surplus = 1.0 - m / n_an;
  const double s = alloc.signal_total();
  if (s == 0.0) return 0.0;
  if (!(alloc.an_w > 0.0) || surplus == 0.0)
    throw InfeasibleApproximation("eavesdropper capacity bound undefined here");
  const double denom =
      (average_streams ? geometry.num_actuators : 1.0) * alloc.an_w * surplus;
  const double ratio = m * s / denom;
  if (1.0 + ratio <= 0.0)
    throw InfeasibleApproximation("eavesdropper capacity bound undefined here");
  return log2_1p(ratio);
}

double secrecy_capacity_lower(const PowerAllocation& alloc, const ScenarioGeometry& geometry,
                              const HardwareProfile& hw, int eavesdropped_index) {
  const double eaves = closed_eaves_capacity(alloc, geometry);
  double total = 0.0;
  for (int k = 0; k < geometry.num_actuators; ++k) {
    const double ck = closed_actuator_capacity(alloc.signal_w[static_cast<std::size_t>(k)],
                                               hw, geometry.num_tx_antennas);
    total += (k == eavesdropped_index) ? std::max(0.0, ck - eaves) : ck;
  }
  return total;
}

double total_power(const PowerAllocation& alloc, const HardwareProfile& hw,
                   const ScenarioGeometry& geometry) {
  return ClosedForms(geometry, hw).total_power(alloc);
}

double secure_ee(const PowerAllocation& alloc, const ScenarioGeometry& geometry,
                 const HardwareProfile& hw) {
  const ClosedForms cf(geometry, hw);
  const double secrecy = secrecy_capacity_lower(alloc, geometry, hw);
  return hw.bandwidth_hz * secrecy / cf.total_power(alloc);
}

ExactLinkMetrics evaluate_exact_link(const ChannelRealization& realization,
                                     const ScenarioGeometry& geometry,
                                     const HardwareProfile& hw,
                                     const PowerAllocation& alloc, std::uint64_t seed,
                                     PowerNormalization normalization,
                                     int eavesdropped_index) {
  const PrecoderSet precoders =
      build_precoder_set(realization, geometry, alloc, seed, normalization);
  const EquivalentChannels eq = equivalent_channels(realization, precoders.rf);

  ExactLinkMetrics out;
  double secrecy = 0.0;
  for (int k = 0; k < geometry.num_actuators; ++k) {
    const double ck = log2_1p(exact_actuator_sinr(eq, precoders, hw.noise_power_w, k));
    if (k == eavesdropped_index) {
      double ce = 0.0;
      if (alloc.an_w > 0.0 && precoders.noise.size() > 0 && !precoders.noise.isZero(0.0))
        ce = log2_1p(exact_eaves_sinr_upper(eq, precoders, k));
      else if (alloc.signal_w[static_cast<std::size_t>(k)] > 0.0)
        ce = std::numeric_limits<double>::infinity();  // noiseless eavesdropper, no AN
      out.eaves_capacity_bps_hz = ce;
      secrecy += std::max(0.0, ck - ce);
    } else {
      secrecy += ck;
    }
  }
  out.secrecy_bps_hz = secrecy;
  const double power = ClosedForms(geometry, hw).total_power(alloc);
  out.ee_bits_per_joule = hw.bandwidth_hz * secrecy / power;
  return out;
}

}  // namespace seehp
