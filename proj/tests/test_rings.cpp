#include <gtest/gtest.h>

#include "elimkit/primes.hpp"
#include "elimkit/random.hpp"
#include "elimkit/rings.hpp"
#include "oracles.hpp"

using namespace elimkit;

TEST(Rational, ParseAndCanonicalForm) {
  EXPECT_EQ(Rational::parse("6/4").str(), "3/2");
  EXPECT_EQ(Rational::parse("-10/5").str(), "-2");
  EXPECT_EQ(Rational::parse("+7").str(), "7");
  EXPECT_THROW(Rational::parse("1/0"), DivisionByZero);
  EXPECT_THROW(Rational::parse("abc"), PreconditionError);
  EXPECT_THROW(Rational::parse("1/-2"), PreconditionError);
  EXPECT_THROW(Rational(1).operator/=(Rational(0)), DivisionByZero);
}

TEST(Rational, Ordering) {
  EXPECT_LT(Rational::parse("1/3"), Rational::parse("1/2"));
  EXPECT_EQ(Rational::parse("2/4"), Rational::parse("1/2"));
  EXPECT_EQ(pow(Rational::parse("2/3"), 3).str(), "8/27");
}

template <class F>
void check_field_axioms(const F& f, std::uint64_t seed) {
  CounterRng rng(seed);
  for (int i = 0; i < 1000; ++i) {
    auto a = f.from_rational(rng.rational(1'000'000, 1));
    auto b = f.from_rational(rng.rational(1'000'000, 1));
    auto c = f.from_rational(rng.rational(1'000'000, 1));
    EXPECT_TRUE(f.eq(f.add(a, b), f.add(b, a)));
    EXPECT_TRUE(f.eq(f.mul(a, b), f.mul(b, a)));
    EXPECT_TRUE(f.eq(f.add(f.add(a, b), c), f.add(a, f.add(b, c))));
    EXPECT_TRUE(f.eq(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c))));
    EXPECT_TRUE(f.eq(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c))));
    EXPECT_TRUE(f.eq(f.add(a, f.neg(a)), f.zero()));
    EXPECT_TRUE(f.eq(f.sub(a, b), f.add(a, f.neg(b))));
    if (!f.is_zero(a)) {
      EXPECT_TRUE(f.eq(f.mul(a, f.inv(a)), f.one()));
      EXPECT_TRUE(f.eq(f.mul(f.div(b, a), a), b));
    }
  }
}

TEST(Fields, AxiomsOnSamples) {
  check_field_axioms(RationalField{}, 1);
  check_field_axioms(PrimeField(101), 2);
  check_field_axioms(PrimeField(4611686018427387847ULL), 3);
  check_field_axioms(BigPrimeField(Integer("170141183460469231731687303715884105727")), 4);  // 2^127 - 1
}

TEST(Fields, PrimeFieldMatchesIntegerArithmetic) {
  const std::uint64_t p = 1'000'003;
  const PrimeField f(p);
  CounterRng rng(9);
  for (int i = 0; i < 1000; ++i) {
    const std::int64_t a = rng.range(-5'000'000, 5'000'000), b = rng.range(-5'000'000, 5'000'000);
    auto mod = [&](__int128 x) { return static_cast<std::uint64_t>(((x % p) + p) % p); };
    EXPECT_EQ(f.add(f.from_int(a), f.from_int(b)).v, mod(static_cast<__int128>(a) + b));
    EXPECT_EQ(f.mul(f.from_int(a), f.from_int(b)).v, mod(static_cast<__int128>(a) * b));
  }
}

TEST(Fields, RejectsNonPrimeModulus) {
  EXPECT_THROW(PrimeField(91), PreconditionError);
  EXPECT_THROW(BigPrimeField(Integer(91)), PreconditionError);
  EXPECT_THROW(PrimeField(7).inv(Residue{0}), DivisionByZero);
  EXPECT_THROW(PrimeField(7).from_rational(Rational(Integer(1), Integer(14))), DivisionByZero);
}

TEST(Fields, FieldOpDispatch) {
  const PrimeField f(13);
  EXPECT_EQ(field_op(f, FieldOp::Add, Residue{7}, Residue{9}).v, 3u);
  EXPECT_EQ(field_op(f, FieldOp::Inv, Residue{2}).v, 7u);
  EXPECT_EQ(field_op(f, FieldOp::Eq, Residue{2}, Residue{2}).v, 1u);
  EXPECT_THROW(field_op(f, FieldOp::Mul, Residue{2}), PreconditionError);
}

TEST(Primes, MillerRabinAgreesWithTrialDivision) {
  for (std::uint64_t n = 0; n < 20000; ++n) EXPECT_EQ(is_prime(n), oracle::trial_prime(n)) << n;
  EXPECT_TRUE(is_prime(4611686018427387847ULL));
  for (std::uint64_t q = 4611686018427387848ULL; q < (1ULL << 62); ++q) EXPECT_FALSE(is_prime(q));
  EXPECT_TRUE(is_prime(Integer("170141183460469231731687303715884105727")));
  EXPECT_FALSE(is_prime(Integer("170141183460469231731687303715884105729")));
}

TEST(Primes, LeastPrimeCongruentOne) {
  for (std::uint64_t d = 1; d <= 40; ++d) {
    std::uint64_t expect = 101;
    while (!(oracle::trial_prime(expect) && (expect - 1) % d == 0)) ++expect;
    EXPECT_EQ(least_prime_congruent_one(d, 100), expect) << d;
  }
}

TEST(PrimitiveRoots, LeastElementOfExactOrder) {
  for (std::uint64_t p : {7ULL, 13ULL, 31ULL, 101ULL, 65537ULL}) {
    const PrimeField f(p);
    for (std::uint64_t d = 1; d < p; ++d) {
      if ((p - 1) % d != 0) continue;
      if (p > 1000 && d > 64) continue;  // keep the brute force small
      // first a whose powers a^1..a^d hit 1 exactly at d
      std::uint64_t least = 0;
      for (std::uint64_t a = 1; a < p && !least; ++a) {
        std::uint64_t x = 1, first = 0;
        for (std::uint64_t e = 1; e <= d && !first; ++e) {
          x = x * a % p;
          if (x == 1) first = e;
        }
        if (first == d) least = a;
      }
      EXPECT_EQ(find_primitive_root(f, d).v, least) << "p=" << p << " d=" << d;
    }
  }
  EXPECT_EQ(find_primitive_root(PrimeField(7), 3).v, 2u);
  EXPECT_THROW(find_primitive_root(PrimeField(7), 4), PreconditionError);
}

TEST(Random, CounterDerivationIsPure) {
  EXPECT_EQ(derive(5, {1, 2}), derive(5, {1, 2}));
  EXPECT_NE(derive(5, {1, 2}), derive(5, {2, 1}));
  EXPECT_EQ(uniform_at(3, {4}, 10), uniform_at(3, {4}, 10));
  CounterRng a(11), b(11);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.next(), b.next());
  std::vector<int> hist(6, 0);
  CounterRng r(12);
  for (int i = 0; i < 6000; ++i) ++hist[r.below(6)];
  for (int h : hist) EXPECT_NEAR(h, 1000, 150);
}
