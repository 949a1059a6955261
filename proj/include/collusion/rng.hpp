#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace collusion {

// splitmix64 (Steele, Lea, Flood 2014). Used for seed derivation only; the
// constants below are part of the reproducibility contract and must not
// change between releases.
inline constexpr uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Derives a child seed from a parent seed and one key. Chaining calls gives
// the documented mix for (master, tile_row, tile_col, trial) and
// (game_seed, agent_index) derivations.
inline constexpr uint64_t seed_mix(uint64_t seed, uint64_t key) {
  return splitmix64(seed ^ splitmix64(key + 0x9E3779B97F4A7C15ull));
}

inline constexpr uint64_t seed_mix(uint64_t seed, std::initializer_list<uint64_t> keys) {
  for (uint64_t k : keys) seed = seed_mix(seed, k);
  return seed;
}

// Deterministic random stream. Wraps std::mt19937_64 (fully specified by the
// standard) and converts raw 64-bit draws to doubles in [0,1) with a fixed
// 53-bit mantissa rule, so identical seeds give identical draws everywhere.
class RandomSource {
 public:
  explicit RandomSource(uint64_t seed) : gen_(seed) {}

  uint64_t next_u64() { return gen_(); }

  double next_double() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform index in [0, n). n is tiny here (tie-breaking between two
  // actions), so the modulo bias of a single draw is unacceptable only in
  // theory; we still use the double path for an exact uniform split.
  int next_index(int n) { return static_cast<int>(next_double() * n); }

  // Child stream for a subcomponent, keyed so sibling streams never collide.
  RandomSource split(uint64_t key) { return RandomSource(seed_mix(gen_(), key)); }

 private:
  std::mt19937_64 gen_;
};

}  // namespace collusion
