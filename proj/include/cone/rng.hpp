#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace cone {

using Rng = std::mt19937_64;

// splitmix64 step; used to derive well-separated seeds for substreams.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Seed for substream `stream` of a base seed. Every independent random
// stream in the project (policy, oracle, evaluation, ...) is derived
// through this single scheme so runs are reproducible from one integer.
inline std::uint64_t substream_seed(std::uint64_t base, std::uint64_t stream) {
  std::uint64_t s = base;
  std::uint64_t a = splitmix64(s);
  s = base ^ (0xd1b54a32d192ed03ULL * (stream + 1));
  std::uint64_t b = splitmix64(s);
  return a ^ (b + 0x9e3779b97f4a7c15ULL * stream);
}

inline Rng make_rng(std::uint64_t base, std::uint64_t stream) {
  return Rng(substream_seed(base, stream));
}

// The distributions below are implemented by hand instead of through
// <random>'s distribution templates: the standard leaves their algorithms
// implementation-defined, and we want byte-identical streams everywhere.

// uniform in [0, 1), 53-bit resolution
inline double uniform01(Rng& g) {
  return static_cast<double>(g() >> 11) * 0x1.0p-53;
}

inline double uniform_real(Rng& g, double lo, double hi) {
  return lo + (hi - lo) * uniform01(g);
}

// uniform over {0, ..., n-1}, unbiased
inline int uniform_int(Rng& g, int n) {
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  const std::uint64_t rem = (UINT64_MAX % un + 1) % un;
  const std::uint64_t limit = UINT64_MAX - rem;
  std::uint64_t v = g();
  while (v > limit) v = g();
  return static_cast<int>(v % un);
}

// exponential with the given mean; mean <= 0 returns +inf (rate zero)
inline double exponential(Rng& g, double mean) {
  if (!(mean > 0.0)) return std::numeric_limits<double>::infinity();
  const double u = uniform01(g);
  return -std::log1p(-u) * mean;
}

// Box-Muller, one variate per call (constant two draws, no cached spare)
inline double normal(Rng& g, double mu, double sigma) {
  const double u1 = 1.0 - uniform01(g);  // (0, 1]
  const double u2 = uniform01(g);
  const double r = std::sqrt(-2.0 * std::log(u1));
  return mu + sigma * r * std::cos(6.283185307179586476925286766559 * u2);
}

inline double lognormal(Rng& g, double mu_log, double sigma_log) {
  return std::exp(normal(g, mu_log, sigma_log));
}

}  // namespace cone
