#pragma once

// Counter-based randomness: every draw is a pure function of (seed, counters),
// so results never depend on evaluation order.

#include <cstdint>
#include <initializer_list>

#include "elimkit/errors.hpp"
#include "elimkit/rational.hpp"

namespace elimkit {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive(std::uint64_t seed, std::initializer_list<std::uint64_t> counters) {
  std::uint64_t h = splitmix64(seed);
  for (auto c : counters) h = splitmix64(h ^ splitmix64(c + 0x632be59bd9b4e019ULL));
  return h;
}

/// A lightweight stream over derive(): draw i is derive(seed, {stream, i}).
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) : seed_(seed), stream_(stream) {}

  std::uint64_t next() { return derive(seed_, {stream_, counter_++}); }

  /// Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw PreconditionError("CounterRng::below: bound must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    for (;;) {
      std::uint64_t x = next();
      if (x < limit) return x % bound;
    }
  }

  /// Uniform integer in [lo, hi].
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(below(span));
  }

  /// Rational num/den with num in [-num_bound, num_bound], den in [1, den_bound].
  Rational rational(std::int64_t num_bound, std::int64_t den_bound) {
    long n = static_cast<long>(range(-num_bound, num_bound));
    long d = static_cast<long>(range(1, den_bound));
    return Rational(Integer(n), Integer(d));
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

/// Uniform draw in [0, bound) determined purely by (seed, counters).
inline std::uint64_t uniform_at(std::uint64_t seed, std::initializer_list<std::uint64_t> counters, std::uint64_t bound) {
  if (bound == 0) throw PreconditionError("uniform_at: bound must be positive");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t base = derive(seed, counters);
  for (std::uint64_t attempt = 0;; ++attempt) {
    std::uint64_t x = attempt == 0 ? base : splitmix64(base ^ splitmix64(attempt));
    if (x < limit) return x % bound;
  }
}

}  // namespace elimkit
