#pragma once

#include <cstdint>
#include <random>

namespace brank {

// splitmix64 finalizer; used for deriving independent sub-streams and for
// deterministic hashing.
inline uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives a stream seed from a root seed and one or more tags. Distinct tags
// yield statistically independent streams.
inline uint64_t substream(uint64_t seed, uint64_t tag) { return mix64(seed ^ mix64(tag)); }
inline uint64_t substream(uint64_t seed, uint64_t tag_a, uint64_t tag_b) {
  return mix64(substream(seed, tag_a) ^ mix64(tag_b ^ 0x517cc1b727220a95ULL));
}

/// Seeded RNG wrapper. Reproducible for a fixed seed on a fixed platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  // Uniform integer in [0, n).
  int index(int n) { return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(engine_)); }
  double normal(double mean = 0.0, double stddev = 1.0) {
    return std::normal_distribution<double>(mean, stddev)(engine_);
  }
  double lognormal(double mu, double sigma) {
    return std::lognormal_distribution<double>(mu, sigma)(engine_);
  }
  int poisson(double mean) { return std::poisson_distribution<int>(mean)(engine_); }
  bool bernoulli(double p) { return std::bernoulli_distribution(p)(engine_); }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace brank
