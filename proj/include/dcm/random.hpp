#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace dcm {

/// Counter-based generator: the value at a counter is a pure function of
/// (seed, counter), so streams can be partitioned by index and replayed in
/// any order.
///
/// Frozen contract (goldens depend on it):
///   key      = mix(seed ^ 0x243F6A8885A308D3)
///   bits(c)  = mix(key + c·0x9E3779B97F4A7C15)     (mod 2^64)
///   mix      = SplitMix64 finalizer
///   uniform  = ((bits >> 11) + 0.5)·2^-53            in (0, 1)
///   normal(i)= sqrt(-2 ln u(2i))·cos(2π u(2i + 1))   (Box–Muller, cosine branch)
class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t seed) noexcept : key_(mix(seed ^ 0x243F6A8885A308D3ULL)) {}

  constexpr std::uint64_t bits(std::uint64_t counter) const noexcept {
    return mix(key_ + counter * 0x9E3779B97F4A7C15ULL);
  }

  constexpr double uniform(std::uint64_t counter) const noexcept {
    return (static_cast<double>(bits(counter) >> 11) + 0.5) * 0x1.0p-53;
  }

  double uniform(std::uint64_t counter, double lo, double hi) const noexcept {
    return lo + (hi - lo) * uniform(counter);
  }

  double normal(std::uint64_t index) const noexcept {
    const double u1 = uniform(2 * index);
    const double u2 = uniform(2 * index + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

 private:
  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
};

/// Sequential reader over a CounterRng, for code that just wants "the next
/// number".
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) noexcept : rng_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) noexcept { return rng_.uniform(next_++, lo, hi); }
  double normal() noexcept {
    const double u1 = rng_.uniform(next_++);
    const double u2 = rng_.uniform(next_++);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Integer in [lo, hi].
  std::uint64_t integer(std::uint64_t lo, std::uint64_t hi) noexcept {
    return lo + rng_.bits(next_++) % (hi - lo + 1);
  }

 private:
  CounterRng rng_;
  std::uint64_t next_ = 0;
};

}  // namespace dcm
