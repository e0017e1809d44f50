// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace trainopt {

/// splitmix64 finalizer; full-period bijection on 64-bit words.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// State for one counter-derived random stream. The generator is splitmix64,
/// with Gaussians produced by an explicit Box-Muller transform so that
/// identical (seed, stream) inputs reproduce bit-identical sequences on any
/// conforming toolchain.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in (0, 1].
  double uniform() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

  /// Uniform double in [lo, hi).
  double uniform(double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n); n > 0.
  std::uint64_t uniform_int(std::uint64_t n) { return next() % n; }

  /// One CN(0,1) sample: real and imaginary parts i.i.d. N(0, 1/2).
  std::complex<double> complex_gaussian() {
    const double r = std::sqrt(-std::log(uniform()));
    const double theta = 2.0 * M_PI * uniform(0.0, 1.0);
    return {r * std::cos(theta), r * std::sin(theta)};
  }

 private:
  std::uint64_t state_;
};

/// Initial state of stream `stream` under master seed `seed`. Streams with
/// distinct indices are statistically independent for practical purposes.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream) {
  return mix64(mix64(seed) + 0x9e3779b97f4a7c15ULL * (stream + 1));
}

}  // namespace trainopt
