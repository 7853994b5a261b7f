#ifndef AUGCACHE_RNG_HPP
#define AUGCACHE_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace augcache {

// Seeded generator with draw helpers that do not depend on the standard
// library's distribution implementations, so a given seed produces the same
// stream on every platform.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  // Uniform in [0, 1).
  double next_unit() {
    return (next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform in {0, ..., n-1}; unbiased via rejection.
  std::size_t uniform_below(std::size_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return static_cast<std::size_t>(x % n);
  }

  bool bernoulli(double p) { return next_unit() < p; }

  // Standard normal via Box-Muller.
  double normal() {
    double u1;
    do {
      u1 = next_unit();
    } while (u1 <= 0.0);
    const double u2 = next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.141592653589793238463 * u2);
  }

private:
  std::mt19937_64 gen_;
};

// splitmix64 finalizer; used to derive independent seeds from a base seed and
// a stream tag.
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace augcache

#endif
