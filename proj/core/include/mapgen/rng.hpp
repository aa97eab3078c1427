#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace mapgen {

// All stochastic code in the project draws from one mt19937_64 stream per
// run, through the helpers below. The helpers are hand-rolled (instead of
// std::uniform_*_distribution) so that the byte stream consumed for a given
// seed is pinned by this code, not by the standard library vendor.
using Rng = std::mt19937_64;

// Uniform double in [0, 1), 53 random bits.
inline double next_double(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n). n must be > 0. Unbiased via rejection.
inline std::uint64_t next_index(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

inline bool next_bool(Rng& rng, double p) { return next_double(rng) < p; }

// Fisher-Yates permutation of 0..n-1.
inline std::vector<std::uint16_t> random_permutation(Rng& rng, std::size_t n) {
  std::vector<std::uint16_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<std::uint16_t>(i);
  for (std::size_t i = n; i > 1; --i) {
    const std::uint64_t j = next_index(rng, i);
    std::swap(perm[i - 1], perm[j]);
  }
  return perm;
}

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Seed for run `run_index` of config `config_index`: two splitmix64 rounds
// over the base seed. Distinct (config, run) pairs get distinct streams.
inline std::uint64_t derive_seed(std::uint64_t base_seed,
                                 std::uint64_t config_index,
                                 std::uint64_t run_index) {
  std::uint64_t x = splitmix64(base_seed ^ splitmix64(config_index + 1));
  return splitmix64(x ^ splitmix64(~run_index));
}

}  // namespace mapgen
