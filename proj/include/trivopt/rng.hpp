#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace trivopt {

/// Deterministic pseudo-random stream.  The same seed always reproduces the
/// same sequence of draws regardless of platform libm/libstdc++ state, because
/// both the uniform and the normal transforms are implemented here rather than
/// delegated to std distributions (whose output is not pinned by the
/// standard).  Child streams derived from distinct tags are independent.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), gen_(mix(seed ^ kGolden)) {}

  /// Uniform draw in [0, 1).
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Standard normal draw (Box-Muller; the second value of each pair is
  /// cached and returned by the next call).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 =
        (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;  // in (0,1)
    const double u2 = (static_cast<double>(gen_() >> 11) + 0.5) * 0x1.0p-53;
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  /// Independent substream identified by `tag`; deterministic in (seed, tag).
  Rng child(std::uint64_t tag) const { return Rng(mix(seed_ ^ mix(tag + kGolden))); }

  std::uint64_t seed() const { return seed_; }

 private:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

  // splitmix64 finalizer: well-mixed 64-bit hash used for stream separation.
  static std::uint64_t mix(std::uint64_t z) {
    z += kGolden;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 gen_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace trivopt
