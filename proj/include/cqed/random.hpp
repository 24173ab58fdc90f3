#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "cqed/constants.hpp"

namespace cqed {

// Deterministic standard-normal stream: mt19937_64 plus an explicit
// Box-Muller transform. std::normal_distribution is implementation-defined,
// so it cannot back the byte-identical-output guarantees; this can.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : eng_(seed) {}

  double next() {
    if (have_) {
      have_ = false;
      return cached_;
    }
    // 53-bit uniforms in (0, 1]; the +1 keeps log() away from 0.
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = kTwoPi * u2;
    cached_ = r * std::sin(a);
    have_ = true;
    return r * std::cos(a);
  }

 private:
  double uniform01() {
    return static_cast<double>((eng_() >> 11) + 1) * 0x1p-53;
  }

  std::mt19937_64 eng_;
  bool have_ = false;
  double cached_ = 0.0;
};

}  // namespace cqed
