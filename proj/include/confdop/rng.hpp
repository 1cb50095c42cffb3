#pragma once

#include <cstdint>

namespace confdop {

// Counter-based normal deviates: every (seed, stream, index) triple maps to a
// fixed value, so output never depends on evaluation order or threading.
//
// Algorithm: SplitMix64 finalizer over a mixed key, 53-bit uniforms,
// Box-Muller (cosine branch for even draws, sine branch for odd).
class CounterRng {
 public:
  static constexpr const char* kAlgorithmId = "splitmix64-counter/box-muller/v1";

  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t bits(std::uint64_t stream, std::uint64_t index) const noexcept;
  // Uniform on the open interval (0, 1).
  double uniform(std::uint64_t stream, std::uint64_t index) const noexcept;
  double normal(std::uint64_t stream, std::uint64_t index) const noexcept;

 private:
  std::uint64_t seed_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

}  // namespace confdop
