#include "confdop/rng.hpp"

#include <cmath>
#include <numbers>

namespace confdop {

namespace {

constexpr std::uint64_t kStreamMix = 0xD1B54A32D192ED03ull;
constexpr std::uint64_t kIndexMix = 0x9E3779B97F4A7C15ull;
constexpr std::uint64_t kNormalTag = 0xA0761D6478BD642Full;

}  // namespace

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t CounterRng::bits(std::uint64_t stream, std::uint64_t index) const noexcept {
  std::uint64_t key = splitmix64(seed_);
  key = splitmix64(key ^ (stream * kStreamMix));
  return splitmix64(key ^ (index * kIndexMix));
}

double CounterRng::uniform(std::uint64_t stream, std::uint64_t index) const noexcept {
  // (k + 0.5) / 2^53 keeps both endpoints out.
  const std::uint64_t k = bits(stream, index) >> 11;
  return (static_cast<double>(k) + 0.5) * 0x1.0p-53;
}

double CounterRng::normal(std::uint64_t stream, std::uint64_t index) const noexcept {
  const std::uint64_t pair = index >> 1;
  const std::uint64_t tagged = stream ^ kNormalTag;
  const double u1 = uniform(tagged, 2 * pair);
  const double u2 = uniform(tagged, 2 * pair + 1);
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return (index & 1u) ? radius * std::sin(angle) : radius * std::cos(angle);
}

}  // namespace confdop
