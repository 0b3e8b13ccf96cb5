#include "seehp/precoding.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "seehp/rng.hpp"

namespace seehp {

namespace {

constexpr std::uint64_t kRfPhaseStream = 0x03;
constexpr double kConditionLimit = 1e12;
constexpr double kNullSpaceRelTol = 1e-10;

}  // namespace

Eigen::MatrixXcd build_rf_precoder(const ChannelRealization& realization,
                                   const ScenarioGeometry& geometry, std::uint64_t seed) {
  const int n_tx = geometry.num_tx_antennas;
  const int n_rf = geometry.num_rf_chains;
  const int k = geometry.num_actuators;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_tx));

  Eigen::MatrixXcd rf(n_tx, n_rf);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < n_tx; ++i)
      rf(i, j) = std::polar(scale, std::arg(realization.actuators(i, j)));

  Rng rng(derive_seed(seed, kRfPhaseStream));
  for (int j = k; j < n_rf; ++j)
    for (int i = 0; i < n_tx; ++i) rf(i, j) = std::polar(scale, rng.phase());
  return rf;
}

EquivalentChannels equivalent_channels(const ChannelRealization& realization,
                                       const Eigen::MatrixXcd& rf) {
  if (realization.actuators.rows() != rf.rows() || realization.eaves.rows() != rf.rows())
    throw InvariantError("equivalent_channels: antenna dimensions must match");
  EquivalentChannels eq;
  eq.actuators_h = realization.actuators.adjoint() * rf;
  eq.eaves_h = realization.eaves.adjoint() * rf;
  return eq;
}

double zf_amplitude(double signal_w, int num_tx_antennas) {
  return std::sqrt(std::numbers::pi * signal_w * (num_tx_antennas - 1) / 4.0);
}

ZfResult zf_baseband(const EquivalentChannels& eq, const PowerAllocation& alloc,
                     const ScenarioGeometry& geometry) {
  alloc.validate();
  const int k = geometry.num_actuators;
  if (eq.actuators_h.rows() != k || static_cast<int>(alloc.signal_w.size()) != k)
    throw InvariantError("zf_baseband: K mismatch");

  const Eigen::MatrixXcd heq = eq.actuators_h.adjoint();  // N_RF x K
  const Eigen::MatrixXcd gram = eq.actuators_h * heq;     // K x K, Hermitian

  {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(eq.actuators_h);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= 0.0 || sv(0) / sv(sv.size() - 1) > kConditionLimit)
      throw DegenerateChannel("zf_baseband: equivalent channel is rank deficient");
  }

  ZfResult out;
  out.zeta.resize(k);
  for (int i = 0; i < k; ++i)
    out.zeta(i) = zf_amplitude(alloc.signal_w[static_cast<std::size_t>(i)],
                               geometry.num_tx_antennas);

  Eigen::MatrixXcd rhs = Eigen::MatrixXcd::Zero(k, k);
  rhs.diagonal() = out.zeta.cast<std::complex<double>>();
  out.signal = heq * gram.llt().solve(rhs);
  return out;
}

Eigen::MatrixXcd an_baseband(const EquivalentChannels& eq, const Eigen::MatrixXcd& rf,
                             double an_w) {
  if (an_w < 0.0) throw std::domain_error("an_baseband: AN power must be >= 0");
  const int n_rf = static_cast<int>(eq.actuators_h.cols());
  const int k = static_cast<int>(eq.actuators_h.rows());
  const int n_an = n_rf - k;

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(eq.actuators_h, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > kNullSpaceRelTol * sv(0)) ++rank;
  if (rank < k)
    throw DegenerateChannel("an_baseband: equivalent channel is rank deficient");

  Eigen::MatrixXcd basis = svd.matrixV().rightCols(n_an);  // orthonormal columns
  if (an_w == 0.0) return Eigen::MatrixXcd::Zero(n_rf, n_an);

  const double radiated = (rf * basis).squaredNorm();
  if (!(radiated > 0.0))
    throw DegenerateChannel("an_baseband: analog precoder annihilates the null space");
  return basis * std::sqrt(an_w / radiated);
}

PrecoderSet build_precoder_set(const ChannelRealization& realization,
                               const ScenarioGeometry& geometry,
                               const PowerAllocation& alloc, std::uint64_t seed,
                               PowerNormalization normalization) {
  PrecoderSet set;
  set.rf = build_rf_precoder(realization, geometry, seed);
  const EquivalentChannels eq = equivalent_channels(realization, set.rf);

  ZfResult zf = zf_baseband(eq, alloc, geometry);
  set.signal = std::move(zf.signal);
  set.zeta = std::move(zf.zeta);
  set.normalization = normalization;

  if (normalization == PowerNormalization::kExact) {
    for (int j = 0; j < geometry.num_actuators; ++j) {
      const double target = alloc.signal_w[static_cast<std::size_t>(j)];
      const double radiated = (set.rf * set.signal.col(j)).squaredNorm();
      if (target == 0.0 || radiated == 0.0) {
        set.signal.col(j).setZero();
        set.zeta(j) = 0.0;
      } else {
        const double r = std::sqrt(target / radiated);
        set.signal.col(j) *= r;
        set.zeta(j) *= r;
      }
    }
  }

  set.noise = an_baseband(eq, set.rf, alloc.an_w);
  return set;
}

}  // namespace seehp
