#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace rig {

// Counter-based random stream keyed by (seed, replicate).
//
// Output i of stream (s, r) is mix(key(s, r) + i * GAMMA) with the SplitMix64
// finalizer as mix; streams for distinct replicates are independent for all
// practical purposes and a draw depends only on (seed, replicate, counter),
// so parallel Monte Carlo is order-independent and reproducible at any
// thread count.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t replicate)
      : key_(mix(mix(seed + kGamma) ^ mix(replicate + kKeySalt))), ctr_(0) {}

  std::uint64_t next_u64() { return mix(key_ + (ctr_++) * kGamma); }

  // 53-bit uniform in [0,1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Threshold compare on a 53-bit uniform; p is treated as an exact binary64.
  bool bernoulli(double p) { return next_unit() < p; }

  // Unbiased integer in [0, bound) by rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    std::uint64_t mask = bound - 1;
    mask |= mask >> 1; mask |= mask >> 2; mask |= mask >> 4;
    mask |= mask >> 8; mask |= mask >> 16; mask |= mask >> 32;
    std::uint64_t v;
    do { v = next_u64() & mask; } while (v >= bound);
    return v;
  }

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30; z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27; z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kKeySalt = 0x6a09e667f3bcc909ULL;
  std::uint64_t key_;
  std::uint64_t ctr_;
};

// Exact Binomial(n, p) sampling.
//
// Small mean: CDF inversion with the pmf recurrence. Large mean: BTRS
// transformed rejection (Hoermann), which is exact because acceptance
// compares against the true log-pmf via lgamma.
std::int64_t binomial_draw(CounterRng& rng, std::int64_t n, double p);

}  // namespace rig
