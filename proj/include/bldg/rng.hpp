#pragma once

#include "bldg/scalar.hpp"

#include <cstdint>

namespace bldg {

/// splitmix64. Seeded determinism everywhere: reports must be byte-identical
/// across runs and platforms, so no std:: distributions are used.
struct Rng {
  uint64_t state;

  explicit Rng(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// uniform in [0, n)
  uint64_t below(uint64_t n) { return n ? next() % n : 0; }

  /// uniform integer in [lo, hi]
  long long range(long long lo, long long hi) {
    return lo + (long long)below((uint64_t)(hi - lo + 1));
  }

  /// a hull element with |value| <= radius and denominator <= maxden
  /// (denominator forced to 1 for Lambda = Z)
  Rational rational(LambdaKind kind, long radius, int maxden) {
    long den = kind == LambdaKind::integers ? 1 : (long)range(1, maxden);
    long num = (long)range(-radius * den, radius * den);
    return Rational(num, den);
  }

  Scalar scalar(LambdaKind kind, long radius, int maxden) {
    if (kind == LambdaKind::lex_pair)
      return Scalar::lex(rational(kind, radius, maxden), rational(kind, radius, maxden));
    return Scalar::of(kind, rational(kind, radius, maxden));
  }
};

using TestRng = Rng;

} // namespace bldg
