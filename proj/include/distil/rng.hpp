#pragma once

#include <cmath>
#include <complex>
#include <cstdint>

// Counter-based randomness (splitmix64): output i of a stream is a fixed
// 64-bit mix of seed + i*gamma, so streams are reproducible across platforms
// and independent streams are derived by hashing (seed, index) pairs. All
// floating-point conversions are spelled out explicitly for the same reason.

namespace distil {

namespace detail {
inline std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return detail::splitmix64_mix(detail::splitmix64_mix(master + 0x9e3779b97f4a7c15ULL) ^ (index + 0x9e3779b97f4a7c15ULL));
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    return detail::splitmix64_mix(state_);
  }

  // Uniform on [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller.
  double next_normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u = next_double();
    while (u <= 0.0) u = next_double();
    const double v = next_double();
    const double radius = std::sqrt(-2.0 * std::log(u));
    const double angle = 6.283185307179586476925286766559 * v;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

  // Complex standard normal (unit total variance).
  std::complex<double> next_complex_normal() {
    const double re = next_normal();
    const double im = next_normal();
    return {re * 0.7071067811865475244, im * 0.7071067811865475244};
  }

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace distil
