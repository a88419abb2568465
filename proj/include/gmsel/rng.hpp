#pragma once

#include <cstdint>

namespace gmsel {

// Deterministic counter-based generator (SplitMix64 finalizer over an
// affine counter sequence). This is the repo-wide randomness contract:
//
//   out(i) = mix64(key + (i + 1) * kGamma)
//
// where mix64 is the SplitMix64 finalizer and kGamma the golden-ratio
// increment. The i-th output depends only on (key, i), so any draw can be
// reproduced from its coordinates regardless of scheduling. Streams are
// split by deriving a fresh key from (key, stream_id); the harness derives
// one stream per (seed, n, trial_index) and the samplers one per chain.
// All arithmetic is unsigned 64-bit, identical across platforms.
class CounterRng {
 public:
  static constexpr uint64_t kGamma = 0x9E3779B97F4A7C15ull;

  explicit CounterRng(uint64_t key) : key_(key) {}

  static uint64_t mix64(uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  // Key for an independent substream.
  static uint64_t derive(uint64_t key, uint64_t stream_id) {
    return mix64(key ^ mix64(stream_id * kGamma + 0x632BE59BD9B4E019ull));
  }

  uint64_t next_u64() { return mix64(key_ + (++counter_) * kGamma); }

  // Uniform double in [0, 1), 53 mantissa bits.
  double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

  uint64_t key() const { return key_; }
  uint64_t counter() const { return counter_; }

 private:
  uint64_t key_;
  uint64_t counter_ = 0;
};

}  // namespace gmsel
