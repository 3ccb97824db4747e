#pragma once

#include <cstdint>

namespace exekg {

// Fixed 64-bit linear congruential generator, used everywhere a seed parameter
// appears so that splits and weight initializations are bit-reproducible
// across platforms and languages.
//
//   state' = state * 6364136223846793005 + 1442695040888963407   (mod 2^64)
//
// next() returns the full successor state. next_below(n) reduces it modulo n.
// next_unit() maps the top 53 bits to [0, 1).
class Lcg64 {
 public:
  explicit Lcg64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ = state_ * 6364136223846793005ULL + 1442695040888963407ULL;
    return state_;
  }

  std::uint64_t next_below(std::uint64_t n) { return next() % n; }

  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

}  // namespace exekg
