// Apache License, Version 2.0, refer to LICENSE.txt
#ifndef NETGEN_RNG_HPP
#define NETGEN_RNG_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>

namespace netgen {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; used to decorrelate derived seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of substream `index` under `seed`. Work item i of a parallel loop
/// always draws from derive_seed(seed, i), so results do not depend on
/// scheduling.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

/// Named substream, e.g. derive_seed(master, "size=8/model=deep/fit").
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return derive_seed(seed, h);
}

inline Rng make_rng(std::uint64_t seed) { return Rng(mix64(seed)); }

/// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

/// Uniform integer in [0, n).
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace netgen

#endif  // NETGEN_RNG_HPP
