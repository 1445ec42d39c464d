#pragma once

#include <cstdint>
#include <vector>

#include "rdcsim/time.hpp"

namespace rdcsim {

/// Deterministic pseudo-random stream (xoshiro256++ seeded via splitmix64).
/// A given (seed, substream) pair yields the same draw sequence on every
/// platform, which is what makes whole campaigns byte-reproducible. The
/// standard <random> distributions are not portable across library
/// implementations, so the mapping helpers are hand-rolled.
class RngStream {
 public:
  RngStream() : RngStream(0, 0) {}

  RngStream(std::uint64_t seed, std::uint64_t substream) {
    std::uint64_t x = seed ^ (0x9e3779b97f4a7c15ULL * (substream + 1));
    for (auto& word : state_) word = splitmix64(x);
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t uniform_below(std::uint64_t bound) {
    // Lemire multiply-shift with rejection; unbiased and portable.
    std::uint64_t x = next_u64();
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
      const std::uint64_t threshold = -bound % bound;
      while (lo < threshold) {
        x = next_u64();
        m = static_cast<__uint128_t>(x) * bound;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform SimTime in [0, bound).
  SimTime uniform_time(SimTime bound) {
    return static_cast<SimTime>(uniform_below(static_cast<std::uint64_t>(bound)));
  }

  /// Uniform double in [0, 1) with 53-bit resolution.
  double uniform_01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// k distinct values drawn from [0, n), in draw order.
  std::vector<std::uint32_t> sample_distinct(std::uint32_t n, std::uint32_t k) {
    std::vector<std::uint32_t> pool(n);
    for (std::uint32_t i = 0; i < n; ++i) pool[i] = i;
    std::vector<std::uint32_t> out;
    out.reserve(k);
    for (std::uint32_t i = 0; i < k && i < n; ++i) {
      const auto j = i + static_cast<std::uint32_t>(uniform_below(n - i));
      std::swap(pool[i], pool[j]);
      out.push_back(pool[i]);
    }
    return out;
  }

 private:
  static std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

  std::uint64_t state_[4];
};

/// Substream ids reserved by the harness. Per-node streams start at kNodeBase
/// so traffic jitter stays independent of topology placement and seeds compose.
namespace substream {
constexpr std::uint64_t kTopology = 0;
constexpr std::uint64_t kTrafficControl = 1;
constexpr std::uint64_t kNodeBase = 16;
constexpr std::uint64_t kMacBase = 65536;  // per-node MAC scheduling slop
}  // namespace substream

}  // namespace rdcsim
