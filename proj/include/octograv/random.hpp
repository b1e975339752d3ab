#pragma once

#include <cstdint>
#include <random>

namespace octograv {

/// Seeded generator with a portable uniform mapping (mt19937_64 output is
/// fixed by the standard; std::uniform_real_distribution is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double canonical() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * canonical(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace octograv
