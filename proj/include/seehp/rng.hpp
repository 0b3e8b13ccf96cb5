#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <random>

namespace seehp {

/// Deterministic seed derivation: folds a sequence of stream identifiers
/// into a root seed so that independent sampling streams (trials, sweep
/// points, resampling attempts) never share generator state.
inline std::uint64_t mix_seed(std::uint64_t seed) {
  // splitmix64 finalizer
  seed += 0x9e3779b97f4a7c15ULL;
  seed = (seed ^ (seed >> 30)) * 0xbf58476d1ce4e5b9ULL;
  seed = (seed ^ (seed >> 27)) * 0x94d049bb133111ebULL;
  return seed ^ (seed >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a) {
  return mix_seed(mix_seed(root) ^ a);
}

inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a, std::uint64_t b) {
  return mix_seed(derive_seed(root, a) ^ mix_seed(b));
}

inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a, std::uint64_t b,
                                 std::uint64_t c) {
  return mix_seed(derive_seed(root, a, b) ^ mix_seed(c));
}

/// Seeded sampler with hand-rolled transforms. std::normal_distribution is
/// implementation-defined, so Gaussian draws go through an explicit
/// Box-Muller step to keep output identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1]; safe as a log argument.
  double uniform_pos() { return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53; }

  /// Uniform phase on [0, 2*pi).
  double phase() { return 2.0 * std::numbers::pi * uniform(); }

  /// Standard real Gaussian, zero mean, unit variance.
  double gaussian() {
    const double r = std::sqrt(-2.0 * std::log(uniform_pos()));
    return r * std::cos(phase());
  }

  /// Circularly-symmetric complex Gaussian with E[|z|^2] = 1.
  std::complex<double> complex_gaussian() {
    const double mag = std::sqrt(-std::log(uniform_pos()));
    return std::polar(mag, phase());
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace seehp
