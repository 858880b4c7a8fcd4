#pragma once

#include <Eigen/Core>
#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>

namespace dirdist {

/// Deterministic random generator: xoshiro256++ seeded through splitmix64,
/// with the variate transforms implemented here so that streams are
/// reproducible byte-for-byte across platforms (the standard library
/// distributions are implementation-defined).
///
/// Samplers never share hidden state; every consumer takes an Rng by
/// reference. Independent streams for parallel work come from split(), which
/// derives a well-separated state from (seed, stream index).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) { reseed(seed); }

  /// Independent stream derived from a base seed and a stream index.
  static Rng split(std::uint64_t seed, std::uint64_t stream) {
    Rng r(0);
    std::uint64_t sm = seed + stream * 0x9E3779B97F4A7C15ULL;
    for (auto& word : r.state_) word = splitmix64(sm);
    if ((r.state_[0] | r.state_[1] | r.state_[2] | r.state_[3]) == 0) {
      r.state_[0] = 0x9E3779B97F4A7C15ULL;
    }
    return r;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform on [a, b).
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  /// Standard normal via Box-Muller (the sine partner is discarded).
  double normal() {
    const double u1 = 1.0 - uniform();  // in (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  Eigen::VectorXd normal_vector(int n) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = normal();
    return v;
  }

  /// Centered Cauchy with the given scale.
  double cauchy(double scale) {
    return scale * std::tan(std::numbers::pi * (uniform() - 0.5));
  }

  /// Gamma(shape, 1) by Marsaglia-Tsang squeeze; shapes below 1 are boosted.
  double gamma(double shape) {
    if (!(shape > 0.0)) {
      throw std::invalid_argument("Rng::gamma: shape must be positive");
    }
    if (shape < 1.0) {
      const double u = 1.0 - uniform();  // in (0, 1]
      return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = normal();
      double v = 1.0 + c * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      const double u = 1.0 - uniform();
      if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) {
        return d * v;
      }
    }
  }

  double chi_squared(double dof) { return 2.0 * gamma(0.5 * dof); }

 private:
  void reseed(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64(sm);
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) {
      state_[0] = 0x9E3779B97F4A7C15ULL;
    }
  }

  static std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  std::array<std::uint64_t, 4> state_{};
};

}  // namespace dirdist
