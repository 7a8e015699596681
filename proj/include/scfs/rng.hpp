// Seeded randomness. Every stochastic step derives its stream from a user
// seed through derive_seed, so runs are reproducible bit for bit.
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>

namespace scfs {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(splitmix64(base) ^ splitmix64(index + 0x9e3779b97f4a7c15ull));
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b) {
  return derive_seed(derive_seed(base, a), b);
}

// Stream tags keep independent consumers of the same base seed apart.
namespace seed_stream {
constexpr std::uint64_t kInitRetry = 0x5343465301ull;
constexpr std::uint64_t kEvaluation = 0x5343465302ull;
}  // namespace seed_stream

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform draw from {0, ..., n-1}; n must be positive.
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t n) {
  return std::min(static_cast<std::size_t>(uniform01(rng) * static_cast<double>(n)), n - 1);
}

}  // namespace scfs
