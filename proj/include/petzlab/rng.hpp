#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

namespace petzlab {

//=========================================================================
// Counter-keyed random streams
//=========================================================================
//
// Monte Carlo estimates must be bit-identical for a given (seed, n)
// regardless of how samples are distributed over threads. Each sample k
// therefore draws from its own splitmix64 stream whose initial state is a
// hash of (seed, k); no generator state is shared across samples.

namespace detail {

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace detail

class SampleStream {
 public:
  SampleStream(std::uint64_t seed, std::uint64_t counter)
      : state_(detail::mix64(seed + 0x9E3779B97F4A7C15ull) ^
               detail::mix64(counter + 0xD1B54A32D192ED03ull)) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    return detail::mix64(state_);
  }

  // Uniform in [0, 1), 53 significant bits.
  double next_u01() {
    return double(next_u64() >> 11) * 0x1.0p-53;
  }

  // Standard normal pair via Box-Muller; uses an explicit bit-to-double
  // mapping so results do not depend on library internals.
  void next_normal_pair(double &z0, double &z1) {
    const double u1 = 1.0 - next_u01();  // (0, 1], keeps the log finite
    const double u2 = next_u01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double two_pi = 6.283185307179586476925286766559;
    z0 = r * std::cos(two_pi * u2);
    z1 = r * std::sin(two_pi * u2);
  }

  // Standard complex Gaussian: real and imaginary parts N(0,1).
  std::complex<double> next_complex_normal() {
    double a, b;
    next_normal_pair(a, b);
    return {a, b};
  }

 private:
  std::uint64_t state_;
};

}  // namespace petzlab
