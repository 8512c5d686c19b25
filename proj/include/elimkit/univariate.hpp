#pragma once

// Dense univariate helpers behind the MultiPoly-facing gcd, square-free part
// and root-product routines.

#include <algorithm>
#include <string>
#include <vector>

#include "elimkit/errors.hpp"
#include "elimkit/multipoly.hpp"

namespace elimkit {

/// Coefficients by ascending degree, no trailing zeros (empty = zero polynomial).
using DenseQ = std::vector<Rational>;
using DenseZ = std::vector<Integer>;

namespace detail {

inline void trim(DenseQ& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline DenseQ dense_rem(DenseQ a, const DenseQ& b) {
  const Rational lead_inv = b.back().inv();
  while (a.size() >= b.size()) {
    const Rational f = a.back() * lead_inv;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

inline DenseQ dense_quo(DenseQ a, const DenseQ& b) {
  if (a.size() < b.size()) return {};
  DenseQ q(a.size() - b.size() + 1);
  const Rational lead_inv = b.back().inv();
  while (a.size() >= b.size()) {
    const Rational f = a.back() * lead_inv;
    const std::size_t shift = a.size() - b.size();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    a.pop_back();
  }
  trim(q);
  return q;
}

inline DenseQ monic(DenseQ p) {
  if (p.empty()) return p;
  const Rational inv = p.back().inv();
  for (auto& c : p) c *= inv;
  return p;
}

inline DenseQ dense_derivative(const DenseQ& p) {
  DenseQ d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * Rational(static_cast<long>(i)));
  trim(d);
  return d;
}

inline DenseZ schoolbook(const DenseZ& a, const DenseZ& b) {
  DenseZ r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) mpz_addmul(r[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
  return r;
}

inline DenseZ karatsuba(const DenseZ& a, const DenseZ& b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t n = std::max(a.size(), b.size());
  const std::size_t half = n / 2;
  if (std::min(a.size(), b.size()) <= std::max<std::size_t>(32, half)) return schoolbook(a, b);
  DenseZ a0(a.begin(), a.begin() + half), a1(a.begin() + half, a.end());
  DenseZ b0(b.begin(), b.begin() + half), b1(b.begin() + half, b.end());
  DenseZ z0 = karatsuba(a0, b0);
  DenseZ z2 = karatsuba(a1, b1);
  DenseZ sa(std::max(a0.size(), a1.size()), 0), sb(std::max(b0.size(), b1.size()), 0);
  for (std::size_t i = 0; i < a0.size(); ++i) sa[i] += a0[i];
  for (std::size_t i = 0; i < a1.size(); ++i) sa[i] += a1[i];
  for (std::size_t i = 0; i < b0.size(); ++i) sb[i] += b0[i];
  for (std::size_t i = 0; i < b1.size(); ++i) sb[i] += b1[i];
  DenseZ z1 = karatsuba(sa, sb);
  for (std::size_t i = 0; i < z0.size(); ++i) z1[i] -= z0[i];
  for (std::size_t i = 0; i < z2.size(); ++i) z1[i] -= z2[i];
  DenseZ r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < z0.size(); ++i) r[i] += z0[i];
  for (std::size_t i = 0; i < z1.size() && i + half < r.size(); ++i) r[i + half] += z1[i];
  for (std::size_t i = 0; i < z2.size(); ++i) r[i + 2 * half] += z2[i];
  return r;
}

inline DenseZ product_tree(const std::vector<DenseZ>& leaves, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return leaves[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return karatsuba(product_tree(leaves, lo, mid), product_tree(leaves, mid, hi));
}

}  // namespace detail

inline DenseZ multiply_dense(const DenseZ& a, const DenseZ& b) { return detail::karatsuba(a, b); }

/// Monic prod (Y - r_i), by a balanced product tree over integer polynomials
/// with denominators cleared; association order is fixed.
inline DenseQ product_of_linear_factors(const std::vector<Rational>& roots) {
  if (roots.empty()) return {Rational(1)};
  std::vector<DenseZ> leaves;
  leaves.reserve(roots.size());
  Integer lead = 1;
  for (const auto& r : roots) {
    leaves.push_back({-r.num(), r.den()});  // den*Y - num
    lead *= r.den();
  }
  DenseZ p = detail::product_tree(leaves, 0, leaves.size());
  DenseQ out;
  out.reserve(p.size());
  for (const auto& c : p) out.emplace_back(c, lead);
  return out;
}

inline MultiPoly dense_to_multipoly(const DenseQ& coeffs, const std::string& var) {
  MultiPoly p({var});
  for (std::size_t i = 0; i < coeffs.size(); ++i) p.add_term({static_cast<std::uint32_t>(i)}, coeffs[i]);
  return p;
}

/// Dense coefficients of a polynomial in at most one variable; `var` receives
/// that variable's name (left untouched for constants).
inline DenseQ multipoly_to_dense(const MultiPoly& p, std::string& var) {
  auto used = p.used_variables();
  if (used.size() > 1) throw PreconditionError("expected a univariate polynomial, got variables in " + p.str());
  if (used.size() == 1) var = used[0];
  DenseQ out(p.is_zero() ? 0 : static_cast<std::size_t>(std::max(0L, p.degree())) + 1);
  auto idx = used.empty() ? std::optional<std::size_t>{} : p.index_of(var);
  for (const auto& [e, c] : p.terms()) out[idx ? e[*idx] : 0] = c;
  detail::trim(out);
  return out;
}

namespace detail {
inline std::string common_variable(const MultiPoly& a, const MultiPoly& b, DenseQ& da, DenseQ& db) {
  std::string va, vb;
  da = multipoly_to_dense(a, va);
  db = multipoly_to_dense(b, vb);
  if (!va.empty() && !vb.empty() && va != vb) throw PreconditionError("uni_gcd: polynomials in different variables");
  if (!va.empty()) return va;
  if (!vb.empty()) return vb;
  if (a.variables().size() == 1) return a.variables()[0];
  if (b.variables().size() == 1) return b.variables()[0];
  return "Y";
}

inline DenseQ dense_gcd(DenseQ a, DenseQ b) {
  while (!b.empty()) {
    DenseQ r = dense_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(std::move(a));
}
}  // namespace detail

/// Monic gcd over Q by the Euclidean algorithm.
inline MultiPoly uni_gcd(const MultiPoly& a, const MultiPoly& b) {
  DenseQ da, db;
  const std::string var = detail::common_variable(a, b, da, db);
  if (da.empty() && db.empty()) throw PreconditionError("uni_gcd: both inputs are zero");
  return dense_to_multipoly(detail::dense_gcd(std::move(da), std::move(db)), var);
}

/// p / gcd(p, p'), made monic: same roots, each with multiplicity one.
inline MultiPoly squarefree_part(const MultiPoly& p) {
  std::string var;
  DenseQ dp = multipoly_to_dense(p, var);
  if (dp.empty()) throw PreconditionError("squarefree_part: zero polynomial");
  if (var.empty()) var = p.variables().size() == 1 ? p.variables()[0] : "Y";
  DenseQ g = detail::dense_gcd(dp, detail::dense_derivative(dp));
  return dense_to_multipoly(detail::monic(detail::dense_quo(dp, g)), var);
}

inline MultiPoly uni_derivative(const MultiPoly& p) {
  std::string var;
  DenseQ dp = multipoly_to_dense(p, var);
  if (var.empty()) var = p.variables().size() == 1 ? p.variables()[0] : "Y";
  return dense_to_multipoly(detail::dense_derivative(dp), var);
}

/// Remainder of a modulo b (b nonzero), both univariate in the same variable.
inline MultiPoly uni_rem(const MultiPoly& a, const MultiPoly& b) {
  DenseQ da, db;
  const std::string var = detail::common_variable(a, b, da, db);
  if (db.empty()) throw DivisionByZero();
  return dense_to_multipoly(detail::dense_rem(std::move(da), db), var);
}

}  // namespace elimkit
