#include <gtest/gtest.h>

#include "elimkit/sequences.hpp"
#include "elimkit/slp_text.hpp"
#include "elimkit/value_encoding.hpp"
#include "oracles.hpp"

using namespace elimkit;

namespace {

ClassSpec spec(std::uint64_t L, std::uint64_t t, std::uint64_t delta = 1) {
  ClassSpec s;
  s.L = L;
  s.t = t;
  s.Delta = delta;
  return s;
}

// smallest x >= 2 with x^L >= target, by counting up
Integer count_up_root(const Integer& target, unsigned long L) {
  Integer x = 1;
  while (ipow(x, L) < target) ++x;
  return x < 2 ? Integer(2) : x;
}

}  // namespace

TEST(SequenceBounds, LengthFormulas) {
  for (std::uint64_t L = 1; L <= 8; ++L)
    for (std::uint64_t t = 1; t <= 4; ++t) {
      const auto s = spec(L, t);
      EXPECT_EQ(required_length(s, SequenceKind::CorrectTest), 2 * L + 2);
      EXPECT_EQ(required_length(s, SequenceKind::Identification), 4 * L + 2);
      EXPECT_EQ(required_length(s, SequenceKind::CircuitClass), 4 * (L + t + 1) * (L + t + 1) + 2);
      EXPECT_EQ(required_set_size(s, SequenceKind::CircuitClass), pow2(4 * (L + 1)));
    }
  EXPECT_EQ(required_length(spec(2, 1), SequenceKind::CircuitClass), 66u);
  EXPECT_EQ(required_set_size(spec(2, 1), SequenceKind::CircuitClass), Integer(4096));
}

TEST(SequenceBounds, SetSizeFromDegreeBound) {
  for (std::uint64_t L = 1; L <= 4; ++L)
    for (std::uint64_t delta = 1; delta <= 4; ++delta)
      for (std::uint64_t K = 0; K <= 2; ++K) {
        ClassSpec s = spec(L, 1, delta);
        s.K = K;
        s.Delta1 = 2;
        s.Delta2 = 3;
        const Integer degO = Integer(static_cast<unsigned long>(L + 1)) * ipow(Integer(static_cast<unsigned long>((1 + 2 * K) * 3)), L);
        const Integer target = ipow(Integer(static_cast<unsigned long>(delta)), 2 * L) * degO;
        EXPECT_EQ(required_set_size(s, SequenceKind::CorrectTest), count_up_root(target, L)) << L << " " << delta << " " << K;
        EXPECT_EQ(required_set_size(s, SequenceKind::Identification), count_up_root(target, L));
        const auto b = degree_bounds(s);
        EXPECT_EQ(b.deg_D, ipow(Integer(static_cast<unsigned long>(1 + 2 * K)), L));
        EXPECT_EQ(b.deg_O, degO);
      }
  ClassSpec o = spec(2, 1, 3);
  o.deg_closure_override = Integer(10);
  // ceil(9 * 10^(1/2)) = ceil(28.46) = 29
  EXPECT_EQ(required_set_size(o, SequenceKind::CorrectTest), Integer(29));
}

TEST(SequenceBounds, CeilRoot) {
  for (unsigned long k = 1; k <= 5; ++k)
    for (long a = 0; a < 300; ++a) {
      const Integer r = ceil_root(Integer(a), k);
      EXPECT_GE(ipow(r, k), Integer(a));
      if (r > 0) {
        EXPECT_LT(ipow(Integer(r - 1), k), Integer(a));
      }
    }
}

TEST(Sampling, DeterministicAndInRange) {
  const auto a = sample_points(50, 3, Integer(7), 123);
  const auto b = sample_points(50, 3, Integer(7), 123);
  EXPECT_EQ(a, b);
  EXPECT_EQ(a.id(), b.id());
  EXPECT_NE(a.id(), sample_points(50, 3, Integer(7), 124).id());
  for (const auto& p : a.points)
    for (const auto& x : p) {
      EXPECT_GE(x, Rational(0));
      EXPECT_LT(x, Rational(7));
    }
  const Integer big = pow2(200) + 12345;
  const auto c = sample_points(20, 2, big, 5);
  for (const auto& p : c.points)
    for (const auto& x : p) EXPECT_LT(x, Rational(big));
  EXPECT_EQ(sample_points(4, 2, big, 5).points[3], c.points[3]);  // prefix-stable
}

TEST(Sampling, UniformityOfSmallRange) {
  std::vector<int> hist(5, 0);
  for (std::uint64_t i = 0; i < 5000; ++i) ++hist[uniform_integer_at(77, i, 0, Integer(5)).get_ui()];
  for (int h : hist) EXPECT_NEAR(h, 1000, 150);
}

TEST(TestSequences, CorrectTestMatchesBruteForce) {
  const auto cls = affine_class(-2, 2);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto g = sample_points(3, 1, Integer(3), seed);
    // oracle: some nonzero member vanishing at every point
    bool vanishing_nonzero = false;
    for (const auto& f : cls.members) {
      if (f.is_zero()) continue;
      bool all_zero = true;
      for (const auto& p : g.points) all_zero = all_zero && f.evaluate(std::span<const Rational>(p)).is_zero();
      vanishing_nonzero = vanishing_nonzero || all_zero;
    }
    EXPECT_EQ(is_correct_test_sequence(g, cls).ok, !vanishing_nonzero) << seed;
  }
}

TEST(TestSequences, IdentificationMatchesBruteForce) {
  const auto cls = PolyClass::of({MultiPoly::parse("Y^2"), MultiPoly::parse("Y"), MultiPoly::parse("2*Y - 1"),
                                  MultiPoly::parse("1"), MultiPoly::parse("0")});
  for (std::uint64_t seed = 0; seed < 80; ++seed) {
    const auto g = sample_points(2, 1, Integer(4), seed);
    bool injective = true;
    for (std::size_t a = 0; a < cls.members.size(); ++a)
      for (std::size_t b = a + 1; b < cls.members.size(); ++b) {
        bool same = true;
        for (const auto& p : g.points)
          same = same && cls.members[a].evaluate(std::span<const Rational>(p)) ==
                             cls.members[b].evaluate(std::span<const Rational>(p));
        injective = injective && !same;
      }
    const auto r = is_identification_sequence(g, cls);
    EXPECT_EQ(r.ok, injective) << seed;
    if (!r.ok) {
      ASSERT_TRUE(r.witness);
      EXPECT_FALSE(cls.members[r.witness->first] == cls.members[r.witness->second]);
    }
  }
}

TEST(TestSequences, ExplicitSequences) {
  const auto g = explicit_sequence({{Rational(0)}, {Rational(1)}});
  EXPECT_EQ(g.t, 1u);
  EXPECT_EQ(g.M, Integer(0));
  EXPECT_THROW(explicit_sequence({{Rational(0)}, {Rational(1), Rational(2)}}), PreconditionError);
  const auto cls = PolyClass::of({MultiPoly::parse("Y^2 - Y")});
  EXPECT_FALSE(is_correct_test_sequence(g, cls).ok);
  // fewer class variables than coordinates reads the leading coordinates; more is an error
  EXPECT_NO_THROW(is_correct_test_sequence(sample_points(3, 2, Integer(5), 0), cls));
  EXPECT_THROW(is_correct_test_sequence(g, PolyClass::of({MultiPoly::parse("X*Y")})), PreconditionError);
}

TEST(TestSequences, Pit) {
  const Slp zero = parse_slp("slp v1\nvar X\nvar Y\nt0 = add X Y\nt1 = mul t0 t0\nt2 = mul X X\nt3 = mul Y Y\n"
                             "t4 = add t2 t3\nt5 = sub t1 t4\nt6 = mul X Y\nt7 = add t6 t6\nt8 = sub t5 t7\noutput t8\n");
  const auto g = sample_points(10, 2, Integer(1000), 3);
  EXPECT_TRUE(pit(zero, g).zero);
  const Slp nonzero = parse_slp("slp v1\nvar X\nvar Y\nt0 = mul X Y\noutput t0\n");
  const auto v = pit(nonzero, g);
  EXPECT_FALSE(v.zero);
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(v.value, g.points[*v.witness][0] * g.points[*v.witness][1]);
  EXPECT_THROW(pit(parse_slp("slp v1\nparam U\nvar X\noutput X\n"), explicit_sequence({{Rational(1)}})),
               PreconditionError);
}

TEST(TestSequences, UniversalityProbe) {
  const auto g = sample_points(10, 1, Integer(50), 8);
  const auto res = universality_probe(
      g, {{"affine", SequenceKind::Identification, affine_class(-2, 2)},
          {"vanishing", SequenceKind::CorrectTest, PolyClass::of({MultiPoly::parse("Y"), MultiPoly::parse("Y - 1")})}});
  ASSERT_EQ(res.size(), 2u);
  EXPECT_EQ(res[0].name, "affine");
}

TEST(ValueEncoding, RoundTripAndEquality) {
  const auto gamma = share(sample_points(8, 2, Integer(100), 4));
  const auto f = MultiPoly::parse("X1^2 - 3*X1*X2 + 1/2");
  const auto basis = MonomialBasis::total_degree({"X1", "X2"}, 2);
  const auto code = encode(f, gamma, {"X1", "X2"});
  EXPECT_EQ(code.gamma_id, gamma->id());
  EXPECT_EQ(decode(code, basis), f.with_variables({"X1", "X2"}));
  const auto g = MultiPoly::parse("X1^2 - 3*X1*X2 + 1");
  EXPECT_FALSE(code_eq(code, encode(g, gamma, {"X1", "X2"})));
  EXPECT_TRUE(code_eq(code, encode(f, gamma, {"X1", "X2"})));
  const auto other = share(sample_points(8, 2, Integer(100), 5));
  EXPECT_THROW(code_eq(code, encode(f, other, {"X1", "X2"})), PreconditionError);
}

TEST(ValueEncoding, SlpAndPolynomialCodesAgree) {
  const auto gamma = share(sample_points(6, 2, Integer(30), 9));
  const Slp f = parse_slp("slp v1\nvar X1\nvar X2\nt0 = mul X1 X2\nt1 = const 5\nt2 = sub t0 t1\noutput t2\n");
  EXPECT_EQ(encode(f, gamma).values, encode(MultiPoly::parse("X1*X2 - 5"), gamma, {"X1", "X2"}).values);
}

TEST(ValueEncoding, Injectivity) {
  const auto good = share(explicit_sequence({{Rational(0)}, {Rational(1)}}));
  EXPECT_TRUE(injectivity_check(good, affine_class(-1, 1)));
  const auto bad = share(explicit_sequence({{Rational(0)}}));
  EXPECT_FALSE(injectivity_check(bad, affine_class(-1, 1)));
}
