#ifndef NEWTONSCOPE_RNG_HPP
#define NEWTONSCOPE_RNG_HPP

#include <cmath>
#include <complex>
#include <cstdint>

namespace newtonscope {

/// xoshiro256** seeded through splitmix64. Hand-rolled so that streams are
/// bit-reproducible across platforms and standard-library versions; every
/// random choice in the toolkit flows through this.
class Rng {
 public:
  explicit Rng(uint64_t seed, uint64_t stream = 0) {
    uint64_t x = seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1));
    for (auto& s : state_) {
      x += 0x9e3779b97f4a7c15ULL;
      uint64_t z = x;
      z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
      z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
      s = z ^ (z >> 31);
    }
    // xoshiro must not start from the all-zero state
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  uint64_t nextU64() {
    const uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform in [0,1) with 53 random bits.
  double uniform01() { return static_cast<double>(nextU64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  /// Uniform integer in [0, n).
  uint64_t below(uint64_t n) { return nextU64() % n; }

  std::complex<double> unitComplex() {
    double theta = 2.0 * M_PI * uniform01();
    return {std::cos(theta), std::sin(theta)};
  }

  /// Unit-circle constant for start-system mixing, kept away from the real
  /// axis crossings at +-1 (argument at least 0.1 rad from 0 and pi).
  std::complex<double> gamma() {
    for (;;) {
      double theta = 2.0 * M_PI * uniform01();
      double d0 = std::fabs(std::remainder(theta, M_PI));
      if (d0 >= 0.1) return {std::cos(theta), std::sin(theta)};
    }
  }

  /// Generic complex coefficient: unit direction scaled into [0.5, 1.5].
  std::complex<double> genericComplex() { return unitComplex() * uniform(0.5, 1.5); }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
  uint64_t state_[4];
};

}  // namespace newtonscope

#endif
