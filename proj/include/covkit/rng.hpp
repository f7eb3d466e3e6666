#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

namespace covkit {

// Uniform draw in [0, m). std::uniform_int_distribution is implementation
// defined, so bounded draws use rejection sampling to keep generated streams
// identical across standard libraries.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t m) {
  const std::uint64_t rem = (std::numeric_limits<std::uint64_t>::max() % m + 1) % m;
  std::uint64_t x = rng();
  if (rem != 0) {
    const std::uint64_t limit = 0 - rem;
    while (x >= limit) x = rng();
  }
  return x % m;
}

// Fisher-Yates with explicit draws (see uniform_below).
template <typename T>
void shuffle_values(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[uniform_below(rng, i)]);
  }
}

// splitmix64 mix; derives independent seeds for restart attempts.
inline std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

}  // namespace covkit
