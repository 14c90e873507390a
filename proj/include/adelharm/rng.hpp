#pragma once

#include <cstdint>

namespace adelharm {

// Deterministic splitmix64 generator.  std::mt19937 is portable but the
// standard distributions are not; suite reports must be byte-identical
// across platforms, so both the engine and the bounded sampling live here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, n), n > 0.  Rejection sampling keeps it unbiased.
  std::int64_t below(std::int64_t n) {
    const std::uint64_t un = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
    std::uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return static_cast<std::int64_t>(x % un);
  }

  // Uniform in [lo, hi] inclusive.
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + below(hi - lo + 1);
  }

  bool chance(double p) {
    return static_cast<double>(next() >> 11) * 0x1.0p-53 < p;
  }

  // Independent stream derived from this generator's seed and a label.
  // Forking per case index makes results independent of worker scheduling.
  Rng fork(std::uint64_t stream) const {
    Rng r(state_ ^ (0x5851f42d4c957f2dULL * (stream + 1)));
    r.next();
    return r;
  }

 private:
  std::uint64_t state_;
};

}  // namespace adelharm
