#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "chanrecon/types.hpp"

namespace chanrecon {

/// Deterministic random stream: same seed gives a bit-identical sequence.
/// Normal variates come from an explicit Box-Muller transform so the
/// sequence does not depend on the standard library's distribution
/// implementation. A stream is single-owner; concurrent consumers must
/// each hold an independent stream obtained via derive().
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), gen_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Uniform double in [0, 1).
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal N(0, 1).
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    auto [z0, z1] = box_muller();
    spare_ = z1;
    have_spare_ = true;
    return z0;
  }

  /// Circularly symmetric CN(0, 1): real and imaginary parts are
  /// independent N(0, 1/2).
  Complex complex_normal() {
    auto [z0, z1] = box_muller();
    constexpr double inv_sqrt2 = 0.70710678118654752440;
    return {z0 * inv_sqrt2, z1 * inv_sqrt2};
  }

  /// Independent child stream; deterministic in (seed, stream_id).
  RngStream derive(std::uint64_t stream_id) const {
    return RngStream(splitmix64(seed_ + 0x9e3779b97f4a7c15ULL * (stream_id + 1)));
  }

 private:
  std::pair<double, double> box_muller() {
    double u1 = 1.0 - uniform();  // (0, 1]
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * M_PI * u2;
    return {r * std::cos(a), r * std::sin(a)};
  }

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace chanrecon
