#ifndef VORTEX_RNG_HPP
#define VORTEX_RNG_HPP

// Counter-based random numbers: every draw is a pure function of
// (key, counter), so paths and steps can be generated in any order and on any
// worker with identical results.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>

namespace vortex {

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_key(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  return mix64(mix64(mix64(seed) ^ (a * 0xd1b54a32d192ed03ULL)) ^ (b * 0x8cb92ba72f3d8dd7ULL));
}

/// Uniform in the open interval (0, 1).
constexpr double counter_uniform(std::uint64_t key, std::uint64_t counter) {
  const std::uint64_t bits = mix64(key ^ mix64(counter + 0x632be59bd9b4e019ULL)) >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

/// Standard normal number `index` of the stream `key` (Box-Muller on pairs).
inline double counter_normal(std::uint64_t key, std::uint64_t index) {
  const std::uint64_t pair = index / 2;
  const double u1 = counter_uniform(key, 2 * pair);
  const double u2 = counter_uniform(key, 2 * pair + 1);
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  return index % 2 == 0 ? r * std::cos(angle) : r * std::sin(angle);
}

inline void fill_normals(std::uint64_t key, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = counter_normal(key, i);
}

/// Sequential view over a counter stream, for setup-time sampling.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t key) : key_(key) {}
  RandomStream(std::uint64_t seed, std::uint64_t purpose) : key_(derive_key(seed, purpose, 0x5eed)) {}

  double uniform() { return counter_uniform(key_, counter_++); }
  double normal() {
    const double z = counter_normal(key_ ^ 0xa5a5a5a5a5a5a5a5ULL, normal_counter_++);
    return z;
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::uint64_t normal_counter_ = 0;
};

}  // namespace vortex

#endif  // VORTEX_RNG_HPP
