#pragma once

#include <cstdint>

namespace diqsdc {

/// SplitMix64 stream. Independent per-index streams are derived from a master
/// seed so results do not depend on how work is split across threads.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Deterministic sub-stream for (purpose, index) under a master seed.
  static Rng derive(std::uint64_t master, std::uint64_t purpose, std::uint64_t index) {
    std::uint64_t s = mix(master ^ mix(purpose));
    return Rng(mix(s ^ mix(index)));
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  bool bernoulli(double p) { return next_double() < p; }

  /// Fair +1/-1 coin.
  int next_sign() { return (next_u64() & 1) ? 1 : -1; }

 private:
  std::uint64_t state_;
};

}  // namespace diqsdc
