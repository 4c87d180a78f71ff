#ifndef PRIVREL_RNG_HPP_
#define PRIVREL_RNG_HPP_

#include <cstdint>
#include <random>
#include <span>

namespace privrel {

// splitmix64 finalizer; used to derive independent seed streams.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Deterministic per-stream seed derived from a master seed. Streams with
// different indices are statistically independent, so episodes can be
// replayed or reordered without changing their draws.
inline std::uint64_t stream_seed(std::uint64_t master, std::uint64_t stream) {
  return splitmix64(splitmix64(master) ^ splitmix64(stream + 0x9E3779B97F4A7C15ULL));
}

// Uniform double in [0, 1) built from the top 53 bits of the engine output.
// The transform is pinned here (rather than std::uniform_real_distribution)
// so that seeded runs are reproducible across standard libraries.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_in(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

// Inverse-CDF draw from a probability vector. `u01` must lie in [0, 1).
// Falls back to the last positive entry if rounding pushes the cumulative
// sum below 1.
inline int sample_categorical(std::span<const double> probs, double u01) {
  double cum = 0.0;
  int last_positive = -1;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    if (probs[i] > 0.0) last_positive = static_cast<int>(i);
    cum += probs[i];
    if (u01 < cum) return static_cast<int>(i);
  }
  return last_positive;
}

}  // namespace privrel

#endif  // PRIVREL_RNG_HPP_
