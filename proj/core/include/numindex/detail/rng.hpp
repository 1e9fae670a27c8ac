#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace numindex::detail {

/// Deterministic stream RNG. Streams are derived from (master seed, stream id)
/// so restart k of a multi-start run draws the same numbers no matter which
/// thread executes it. splitmix64 state transition; gaussians via Box-Muller
/// built on a fixed bit-to-double mapping, so results do not depend on the
/// standard library's distribution implementations.
class Rng {
 public:
  Rng(std::uint64_t master_seed, std::uint64_t stream) {
    state_ = mix(mix(master_seed + 0x9e3779b97f4a7c15ull) ^
                 mix(stream + 0xbf58476d1ce4e5b9ull));
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  /// Uniform in [0, 1).
  double uniform() { return std::ldexp(double(next_u64() >> 11), -53); }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal.
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace numindex::detail
