#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace swarmmap {

// SplitMix64 (Steele, Lea & Flood 2014): 64-bit state, one add + finalizer
// per draw. Every random decision in the simulator comes from one of these,
// seeded from the experiment seed, so a run is a pure function of its config.
//
// Independent streams are derived per consumer (robot id, iteration, ...)
// rather than drawn sequentially from one generator; that keeps results
// independent of processing order.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1), 53 mantissa bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n). Modulo bias is irrelevant here; determinism is
  // what matters.
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  // Uniform angle in [-pi, pi).
  double next_angle() { return -std::numbers::pi + 2.0 * std::numbers::pi * next_double(); }

  // Standard normal via Box-Muller.
  double next_gaussian() {
    double u1 = next_double();
    const double u2 = next_double();
    if (u1 <= 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  std::uint64_t state_;
};

// SplitMix64's output finalizer, reused for seed derivation.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Stream tags keep the simulator's independent random streams from colliding.
namespace stream {
inline constexpr std::uint32_t kPlacement = 1;  // robot placement shuffle
inline constexpr std::uint32_t kHeading = 2;    // initial headings, per robot id
inline constexpr std::uint32_t kRemoval = 3;    // random removal mode, per iteration
inline constexpr std::uint32_t kRound = 4;      // per-iteration collective rounds
inline constexpr std::uint32_t kNoise = 5;      // consensus noise rounds
}  // namespace stream

inline constexpr std::uint64_t stream_id(std::uint32_t tag, std::uint32_t index) {
  return (static_cast<std::uint64_t>(tag) << 32) | index;
}

// Derived generator for (seed, stream): deterministic and independent across
// distinct streams for practical purposes.
inline SplitMix64 derive_stream(std::uint64_t seed, std::uint64_t stream) {
  return SplitMix64(mix64(seed ^ mix64(stream + 0x632BE59BD9B4E019ull)));
}

// Wrap an angle into [-pi, pi). In-range values pass through untouched so
// that a zero update is a bit-exact fixed point.
inline double wrap_heading(double a) {
  if (a >= -std::numbers::pi && a < std::numbers::pi) return a;
  double y = std::fmod(a + std::numbers::pi, 2.0 * std::numbers::pi);
  if (y < 0.0) y += 2.0 * std::numbers::pi;
  return y - std::numbers::pi;
}

// Wrapped angular difference in (-pi, pi]; identity when already in range.
inline double wrap_angle_diff(double d) {
  if (d > -std::numbers::pi && d <= std::numbers::pi) return d;
  double y = std::fmod(d + std::numbers::pi, 2.0 * std::numbers::pi);
  if (y <= 0.0) y += 2.0 * std::numbers::pi;
  return y - std::numbers::pi;
}

}  // namespace swarmmap
