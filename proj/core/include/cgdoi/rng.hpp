#pragma once

#include <cstdint>

namespace cgdoi {

// Counter-based 64-bit generator (splitmix64 finalizer over seed + counter).
// Output depends only on (seed, counter), so the same seed reproduces the
// same stream on every platform.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed), counter_(0) {}

  std::uint64_t next_u64() {
    std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform on [0, 1), 53-bit mantissa.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on the open interval (0, 1).
  double next_open_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Uniform index in [0, n).
  std::uint64_t next_index(std::uint64_t n) {
    return static_cast<std::uint64_t>(next_unit() * static_cast<double>(n));
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

}  // namespace cgdoi
