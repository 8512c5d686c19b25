#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library code under test except for the value types.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "elimkit/multipoly.hpp"
#include "elimkit/rational.hpp"

namespace oracle {

using elimkit::Integer;
using elimkit::MultiPoly;
using elimkit::Rational;

/// e_k of a finite list by enumerating all subsets.
inline Integer esym_subsets(const std::vector<long>& s, std::size_t k) {
  Integer total = 0;
  const std::size_t n = s.size();
  for (std::uint64_t mask = 0; mask < (1ULL << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != k) continue;
    Integer p = 1;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1ULL) p *= s[i];
    total += p;
  }
  return total;
}

inline std::vector<long> range(long n) {
  std::vector<long> v;
  for (long i = 0; i < n; ++i) v.push_back(i);
  return v;
}

/// prod (Y - r) as ascending coefficients, by repeated multiplication by a linear factor.
inline std::vector<Rational> naive_product(const std::vector<Rational>& roots) {
  std::vector<Rational> c{Rational(1)};
  for (const auto& r : roots) {
    std::vector<Rational> next(c.size() + 1, Rational(0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= r * c[i];
    }
    c = next;
  }
  return c;
}

/// Rational determinant by cofactor expansion (small matrices only).
inline Rational det(const std::vector<std::vector<Rational>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return Rational(1);
  if (n == 1) return m[0][0];
  Rational total(0);
  for (std::size_t c = 0; c < n; ++c) {
    std::vector<std::vector<Rational>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<Rational> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != c) row.push_back(m[r][k]);
      minor.push_back(row);
    }
    const Rational term = m[0][c] * det(minor);
    total = c % 2 == 0 ? total + term : total - term;
  }
  return total;
}

/// Rank by trying every square minor, largest first.
inline std::size_t brute_rank(const std::vector<std::vector<Rational>>& m) {
  const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (std::size_t k = std::min(rows, cols); k > 0; --k) {
    for (std::uint64_t rm = 0; rm < (1ULL << rows); ++rm) {
      if (static_cast<std::size_t>(__builtin_popcountll(rm)) != k) continue;
      for (std::uint64_t cm = 0; cm < (1ULL << cols); ++cm) {
        if (static_cast<std::size_t>(__builtin_popcountll(cm)) != k) continue;
        std::vector<std::vector<Rational>> sub;
        for (std::size_t r = 0; r < rows; ++r) {
          if (!(rm >> r & 1ULL)) continue;
          std::vector<Rational> row;
          for (std::size_t c = 0; c < cols; ++c)
            if (cm >> c & 1ULL) row.push_back(m[r][c]);
          sub.push_back(row);
        }
        if (!det(sub).is_zero()) return k;
      }
    }
  }
  return 0;
}

/// Multiplicative order of a mod p by repeated multiplication.
inline std::uint64_t order_mod(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) return 0;
  std::uint64_t x = a % p, k = 1;
  while (x != 1) {
    x = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * a) % p);
    ++k;
  }
  return k;
}

inline bool trial_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Sum over exponent vectors of a MultiPoly as a map keyed by rendered monomial, for readable diffs.
inline std::map<std::string, std::string> term_map(const MultiPoly& p) {
  std::map<std::string, std::string> out;
  for (const auto& [e, c] : p.sorted_terms()) {
    std::string key;
    for (std::size_t i = 0; i < e.size(); ++i)
      if (e[i]) key += p.variables()[i] + "^" + std::to_string(e[i]) + " ";
    out[key] = c.str();
  }
  return out;
}

}  // namespace oracle
