#pragma once

#include <cstdint>

namespace mxyz {

/// Counter-based generator: every draw is a pure function of
/// (key material, counter), so streams keyed by (seed, shot) or
/// (seed, shot, site) are reproducible independently of evaluation order and
/// thread count. The mixer is the SplitMix64 finalizer.
inline uint64_t mix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline uint64_t hash_key(uint64_t a, uint64_t b, uint64_t c = 0) {
  return mix64(mix64(mix64(a) ^ b) ^ c);
}

class CounterRng {
 public:
  CounterRng(uint64_t seed, uint64_t stream, uint64_t substream = 0)
      : key_(hash_key(seed, stream, substream)), counter_(0) {}

  uint64_t next() { return mix64(key_ ^ counter_++); }

  bool bit() { return next() >> 63; }

  /// Uniform in [0, 1) with 53 bits of mantissa.
  double uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  uint64_t key_;
  uint64_t counter_;
};

}  // namespace mxyz
