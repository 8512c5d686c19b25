#pragma once

#include <cstdint>
#include <vector>

#include "elimkit/random.hpp"
#include "elimkit/rational.hpp"

namespace elimkit {

namespace detail {

inline std::uint64_t mulmod64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod64(r, b, m);
    b = mulmod64(b, b, m);
    e >>= 1;
  }
  return r;
}

// One Miller-Rabin round; n odd, n > 3.
inline bool mr_round64(std::uint64_t n, std::uint64_t a) {
  a %= n;
  if (a == 0) return true;
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  std::uint64_t x = powmod64(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = mulmod64(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

inline bool mr_round_big(const Integer& n, const Integer& a) {
  Integer d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  Integer x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  const Integer nm1 = n - 1;
  if (x == 1 || x == nm1) return true;
  for (unsigned long i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == nm1) return true;
  }
  return false;
}

}  // namespace detail

/// Deterministic for n < 2^64 (fixed base set), otherwise 40 Miller-Rabin
/// rounds with bases derived from a fixed seed.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL})
    if (!detail::mr_round64(n, a)) return false;
  return true;
}

inline constexpr int kMillerRabinRounds = 40;

inline bool is_prime(const Integer& n) {
  if (n < 2) return false;
  if (mpz_fits_ulong_p(n.get_mpz_t())) return is_prime(static_cast<std::uint64_t>(n.get_ui()));
  for (unsigned long p : {2UL, 3UL, 5UL, 7UL, 11UL, 13UL, 17UL, 19UL, 23UL, 29UL, 31UL, 37UL})
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  CounterRng rng(0x5eed5eed5eedULL, 0x6d72);
  const Integer range = n - 3;  // bases in [2, n-2]
  for (int round = 0; round < kMillerRabinRounds; ++round) {
    // Build a base from enough 64-bit draws to cover the range.
    Integer a = 0;
    for (std::size_t limb = 0; limb * 64 < mpz_sizeinbase(n.get_mpz_t(), 2) + 64; ++limb) {
      a <<= 64;
      a += Integer(static_cast<unsigned long>(rng.next()));
    }
    a = a % range + 2;
    if (!detail::mr_round_big(n, a)) return false;
  }
  return true;
}

/// Distinct prime factors of n by trial division (n is small in every use).
inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// Least prime p > lower_exclusive with p = 1 (mod d).
inline std::uint64_t least_prime_congruent_one(std::uint64_t d, std::uint64_t lower_exclusive) {
  if (d == 0) throw PreconditionError("least_prime_congruent_one: d must be positive");
  std::uint64_t p = lower_exclusive + 1;
  std::uint64_t r = (p - 1) % d;
  if (r != 0) p += d - r;
  while (!is_prime(p)) p += d;
  return p;
}

}  // namespace elimkit
