#pragma once

// Evaluation rings: the rationals and prime fields (64-bit and arbitrary
// precision moduli) behind one concept that every evaluator is templated on.

#include <concepts>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>

#include "elimkit/errors.hpp"
#include "elimkit/primes.hpp"
#include "elimkit/rational.hpp"

namespace elimkit {

template <class R>
concept EvaluationRing = requires(const R& r, const typename R::Element& a, const typename R::Element& b,
                                  const Rational& q) {
  { r.zero() } -> std::same_as<typename R::Element>;
  { r.one() } -> std::same_as<typename R::Element>;
  { r.add(a, b) } -> std::same_as<typename R::Element>;
  { r.sub(a, b) } -> std::same_as<typename R::Element>;
  { r.mul(a, b) } -> std::same_as<typename R::Element>;
  { r.div(a, b) } -> std::same_as<typename R::Element>;
  { r.neg(a) } -> std::same_as<typename R::Element>;
  { r.inv(a) } -> std::same_as<typename R::Element>;
  { r.eq(a, b) } -> std::same_as<bool>;
  { r.is_zero(a) } -> std::same_as<bool>;
  { r.from_rational(q) } -> std::same_as<typename R::Element>;
  { r.to_string(a) } -> std::same_as<std::string>;
};

class RationalField {
 public:
  using Element = Rational;

  Element zero() const { return Rational(0); }
  Element one() const { return Rational(1); }
  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element div(const Element& a, const Element& b) const { return a / b; }
  Element neg(const Element& a) const { return -a; }
  Element inv(const Element& a) const { return a.inv(); }
  bool eq(const Element& a, const Element& b) const { return a == b; }
  bool is_zero(const Element& a) const { return a.is_zero(); }
  Element from_rational(const Rational& q) const { return q; }
  Element from_int(long v) const { return Rational(v); }
  std::string to_string(const Element& a) const { return a.str(); }
  std::string name() const { return "Q"; }
};

/// Canonical residue in [0, p).
struct Residue {
  std::uint64_t v = 0;
  friend bool operator==(Residue, Residue) = default;
};

/// F_p for a prime p < 2^63, using 128-bit intermediate products.
class PrimeField {
 public:
  using Element = Residue;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p >= (1ULL << 63)) throw PreconditionError("PrimeField: modulus must be below 2^63 (use BigPrimeField)");
    if (!is_prime(p)) throw PreconditionError("PrimeField: modulus " + std::to_string(p) + " is not prime");
  }

  std::uint64_t modulus() const noexcept { return p_; }
  Integer order_minus_one() const { return Integer(static_cast<unsigned long>(p_ - 1)); }

  Element zero() const { return {0}; }
  Element one() const { return {1 % p_}; }
  Element add(Element a, Element b) const {
    std::uint64_t s = a.v + b.v;
    return {s >= p_ ? s - p_ : s};
  }
  Element sub(Element a, Element b) const { return {a.v >= b.v ? a.v - b.v : a.v + p_ - b.v}; }
  Element mul(Element a, Element b) const { return {detail::mulmod64(a.v, b.v, p_)}; }
  Element neg(Element a) const { return {a.v == 0 ? 0 : p_ - a.v}; }
  Element inv(Element a) const {
    if (a.v == 0) throw DivisionByZero();
    return {detail::powmod64(a.v, p_ - 2, p_)};
  }
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  bool eq(Element a, Element b) const { return a.v == b.v; }
  bool is_zero(Element a) const { return a.v == 0; }
  Element pow(Element a, const Integer& e) const {
    Integer r;
    Integer b(static_cast<unsigned long>(a.v)), m(static_cast<unsigned long>(p_));
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return {static_cast<std::uint64_t>(r.get_ui())};
  }
  Element from_integer(const Integer& z) const {
    Integer r;
    Integer m(static_cast<unsigned long>(p_));
    mpz_mod(r.get_mpz_t(), z.get_mpz_t(), m.get_mpz_t());
    return {static_cast<std::uint64_t>(r.get_ui())};
  }
  Element from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += static_cast<std::int64_t>(p_);
    return {static_cast<std::uint64_t>(r)};
  }
  /// Image of num/den; DivisionByZero when p divides the denominator.
  Element from_rational(const Rational& q) const { return div(from_integer(q.num()), from_integer(q.den())); }
  Integer to_integer(Element a) const { return Integer(static_cast<unsigned long>(a.v)); }
  std::string to_string(Element a) const { return std::to_string(a.v); }
  std::string name() const { return "F_" + std::to_string(p_); }

 private:
  std::uint64_t p_;
};

/// F_p for an arbitrary-precision prime modulus.
class BigPrimeField {
 public:
  using Element = Integer;

  explicit BigPrimeField(Integer p) : p_(std::move(p)) {
    if (!is_prime(p_)) throw PreconditionError("BigPrimeField: modulus " + p_.get_str() + " is not prime");
  }

  const Integer& modulus() const noexcept { return p_; }
  Integer order_minus_one() const { return p_ - 1; }

  Element zero() const { return 0; }
  Element one() const { return reduce(Integer(1)); }
  Element add(const Element& a, const Element& b) const { return reduce(a + b); }
  Element sub(const Element& a, const Element& b) const { return reduce(a - b); }
  Element mul(const Element& a, const Element& b) const { return reduce(a * b); }
  Element neg(const Element& a) const { return reduce(-a); }
  Element inv(const Element& a) const {
    if (a == 0) throw DivisionByZero();
    Integer r;
    mpz_invert(r.get_mpz_t(), a.get_mpz_t(), p_.get_mpz_t());
    return r;
  }
  Element div(const Element& a, const Element& b) const { return mul(a, inv(b)); }
  bool eq(const Element& a, const Element& b) const { return a == b; }
  bool is_zero(const Element& a) const { return a == 0; }
  Element pow(const Element& a, const Integer& e) const {
    Integer r;
    mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), p_.get_mpz_t());
    return r;
  }
  Element from_integer(const Integer& z) const { return reduce(z); }
  Element from_int(std::int64_t v) const { return reduce(Integer(static_cast<long>(v))); }
  Element from_rational(const Rational& q) const { return div(reduce(q.num()), reduce(q.den())); }
  Integer to_integer(const Element& a) const { return a; }
  std::string to_string(const Element& a) const { return a.get_str(); }
  std::string name() const { return "F_" + p_.get_str(); }

 private:
  Element reduce(const Integer& z) const {
    Integer r;
    mpz_mod(r.get_mpz_t(), z.get_mpz_t(), p_.get_mpz_t());
    return r;
  }
  Integer p_;
};

static_assert(EvaluationRing<RationalField>);
static_assert(EvaluationRing<PrimeField>);
static_assert(EvaluationRing<BigPrimeField>);

enum class FieldOp { Add, Sub, Mul, Div, Neg, Inv, Eq };

/// Single dispatch point over the ring operations. Eq returns one() / zero().
template <EvaluationRing R>
typename R::Element field_op(const R& ring, FieldOp op, const typename R::Element& a,
                             const std::optional<typename R::Element>& b = std::nullopt) {
  auto rhs = [&]() -> const typename R::Element& {
    if (!b) throw PreconditionError("field_op: binary operation needs two operands");
    return *b;
  };
  switch (op) {
    case FieldOp::Add: return ring.add(a, rhs());
    case FieldOp::Sub: return ring.sub(a, rhs());
    case FieldOp::Mul: return ring.mul(a, rhs());
    case FieldOp::Div: return ring.div(a, rhs());
    case FieldOp::Neg: return ring.neg(a);
    case FieldOp::Inv: return ring.inv(a);
    case FieldOp::Eq: return ring.eq(a, rhs()) ? ring.one() : ring.zero();
  }
  throw PreconditionError("field_op: unknown operation");
}

/// Smallest residue of multiplicative order exactly d in F_p.
///
/// A first element of order d is found by scanning c = 2, 3, ... and raising
/// c to (p-1)/d; the least generator of the resulting cyclic subgroup is then
/// picked among its powers h^k with gcd(k, d) = 1. For d above
/// kMaxCanonicalOrder the first element found is returned as is.
inline constexpr std::uint64_t kMaxCanonicalOrder = 1ULL << 24;

template <class Field>
typename Field::Element find_primitive_root(const Field& field, std::uint64_t d) {
  if (d == 0) throw PreconditionError("find_primitive_root: d must be positive");
  const Integer group = field.order_minus_one();
  if (!mpz_divisible_ui_p(group.get_mpz_t(), d))
    throw PreconditionError("no such root: " + std::to_string(d) + " does not divide p-1");
  if (d == 1) return field.one();
  const auto factors = prime_factors(d);
  const Integer cofactor = group / Integer(static_cast<unsigned long>(d));
  auto has_exact_order = [&](const typename Field::Element& g) {
    for (auto q : factors)
      if (field.eq(field.pow(g, Integer(static_cast<unsigned long>(d / q))), field.one())) return false;
    return true;
  };
  for (long c = 2;; ++c) {
    auto base = field.from_int(c);
    if (field.is_zero(base)) throw PreconditionError("find_primitive_root: search exhausted");
    auto h = field.pow(base, cofactor);
    if (!has_exact_order(h)) continue;
    if (d > kMaxCanonicalOrder) return h;
    auto best = h;
    auto power = h;
    for (std::uint64_t k = 2; k < d; ++k) {
      power = field.mul(power, h);
      if (std::gcd(k, d) == 1 && field.to_integer(power) < field.to_integer(best)) best = power;
    }
    return best;
  }
}

}  // namespace elimkit
