#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace polyembed {

// Deterministic random stream. All randomness in the library flows through
// this wrapper so results are bit-reproducible for a given seed, independent
// of platform library implementations and of thread scheduling (parallel
// callers derive one stream per work item via derive_seed).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {
    // splitmix64 warmup decorrelates small seeds.
    for (int i = 0; i < 4; ++i) next_raw();
  }

  // 64 random bits (splitmix64).
  std::uint64_t next_raw() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(next_raw() >> 11) * 0x1.0p-53;
  }

  // Uniform in (0, 1]; safe as a log() argument.
  double uniform01_open() { return 1.0 - uniform01(); }

  double exponential() { return -std::log(uniform01_open()); }

  // Standard normal via Box-Muller; one value per call, no cached state so
  // the stream position stays predictable.
  double gaussian() {
    const double r = std::sqrt(2.0 * exponential());
    const double t = 6.283185307179586476925286766559 * uniform01();
    return r * std::cos(t);
  }

  // Index in [0, n).
  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(uniform01() * static_cast<double>(n)) % n;
  }

  // Uniform point in the unit ball of dimension d (gaussian direction,
  // radius by inverse cdf).
  std::vector<double> ball(std::size_t d) {
    std::vector<double> v(d);
    double norm2 = 0.0;
    for (auto& x : v) {
      x = gaussian();
      norm2 += x * x;
    }
    const double norm = std::sqrt(norm2);
    const double r =
        std::pow(uniform01_open(), 1.0 / static_cast<double>(d));
    if (norm > 0.0) {
      for (auto& x : v) x *= r / norm;
    }
    return v;
  }

 private:
  std::uint64_t state_;
};

// Stable per-item seed for parallel loops: mixing instead of offsetting keeps
// the derived streams uncorrelated.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed ^ (0x9e3779b97f4a7c15ULL + (index << 1));
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace polyembed
