#ifndef MANTEL_RANDOM_HPP
#define MANTEL_RANDOM_HPP

#include <cstdint>

namespace mantel {

/// SplitMix64 finalizer: a fixed 64-bit avalanche permutation.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ULL;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBULL;
  x ^= x >> 31;
  return x;
}

/// Keyed counter hash. Every (key, counter) pair maps to an independent-looking
/// 64-bit word; used both for edge draws and for per-trial seeds.
constexpr std::uint64_t keyed_hash(std::uint64_t key, std::uint64_t counter) {
  return mix64(mix64(key ^ 0x6A09E667F3BCC909ULL) +
               (counter + 1) * 0x9E3779B97F4A7C15ULL);
}

/// Seed of trial `index` under master seed `master`.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  return keyed_hash(master ^ 0xA54FF53A5F1D36F1ULL, index);
}

}  // namespace mantel

#endif  // MANTEL_RANDOM_HPP
