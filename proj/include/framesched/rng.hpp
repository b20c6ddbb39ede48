#ifndef FRAMESCHED_RNG_HPP
#define FRAMESCHED_RNG_HPP

#include <cstdint>
#include <random>

namespace framesched {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based sub-stream derivation: one named seed per run, independent
/// reproducible streams per (seed, stream) pair.
inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t stream) {
  return std::mt19937_64(splitmix64(seed ^ splitmix64(stream + 0x8000000000000000ULL)));
}

/// Uniform double in [0,1) from the top 53 bits; identical across platforms.
inline double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(std::mt19937_64& gen, double p) { return uniform01(gen) < p; }

}  // namespace framesched

#endif
