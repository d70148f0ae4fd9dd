#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace fplap {

/// Seeded generator with a reproducible uniform mapping.  The [0,1) mapping is
/// done by hand (53-bit mantissa fill) so that identical seeds give identical
/// streams on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() {
    return std::ldexp(static_cast<double>(engine_() >> 11), -53);
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  std::uint64_t next_u64() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fplap
