#pragma once

#include <cstdint>
#include <random>

namespace smdo_tune {

// Seeded uniform source. The [0,1) draw uses the top 53 bits of the
// mt19937_64 word directly so sequences are identical on every platform
// (std::uniform_real_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace smdo_tune
