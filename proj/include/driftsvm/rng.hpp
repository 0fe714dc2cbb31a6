#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace driftsvm {

/// Derives an independent sub-seed from a master seed and a stream tag.
/// splitmix64-style mixing; equal inputs give equal outputs on every platform.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Uniform double in [0, 1). mt19937_64 output is pinned by the standard;
/// the explicit transform avoids std::uniform_real_distribution, whose
/// draw sequence is implementation-defined.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform index in [0, bound). Modulo bias is irrelevant at 64 bits for the
/// bounds used here and keeps the draw count at exactly one per call.
inline std::size_t uniform_index(std::mt19937_64& rng, std::size_t bound) {
  return static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(bound));
}

/// One standard-normal pair via Box-Muller; consumes exactly two engine draws.
inline std::pair<double, double> normal_pair(std::mt19937_64& rng) {
  constexpr double two_pi = 6.283185307179586476925286766559;
  const double u1 = 1.0 - uniform01(rng);  // shift into (0, 1] so log is finite
  const double u2 = uniform01(rng);
  const double r = std::sqrt(-2.0 * std::log(u1));
  return {r * std::cos(two_pi * u2), r * std::sin(two_pi * u2)};
}

/// Fisher-Yates shuffle with the modulo draw above. std::shuffle is not
/// reproducible across standard libraries; this is.
template <typename T>
void shuffle_portable(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[uniform_index(rng, i)]);
  }
}

}  // namespace driftsvm
