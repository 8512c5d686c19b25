#include <gtest/gtest.h>

#include "elimkit/interpolate.hpp"
#include "elimkit/multipoly.hpp"
#include "elimkit/random.hpp"
#include "elimkit/univariate.hpp"
#include "oracles.hpp"

using namespace elimkit;

TEST(MultiPoly, CanonicalText) {
  const auto y = MultiPoly::variable("Y");
  const auto p = y * y - y.scaled(Rational(6)) + MultiPoly::constant(Rational(11));
  EXPECT_EQ(p.str(), "Y^2 - 6*Y + 11");
  EXPECT_EQ(MultiPoly::parse("Y^2 - 6*Y + 11"), p);
  EXPECT_EQ(MultiPoly().str(), "0");
  EXPECT_EQ(MultiPoly::parse("-1/2*X*Y^3 + X").str(), "-1/2*X*Y^3 + X");
}

TEST(MultiPoly, ArithmeticAcrossVariableLists) {
  const auto a = MultiPoly::parse("X + 1");
  const auto b = MultiPoly::parse("Y - 1");
  const auto c = a * b;
  EXPECT_EQ(c.str(), "X*Y - X + Y - 1");
  EXPECT_EQ(c - c, MultiPoly());
  EXPECT_EQ(a.pow(3), a * a * a);
  EXPECT_EQ(c.derivative("X").str(), "Y - 1");
  EXPECT_EQ(c.degree_in("Y"), 1);
  EXPECT_EQ(c.substitute({{"X", Rational(2)}}).str(), "3*Y - 3");
  EXPECT_EQ(c.compose({{"Y", MultiPoly::parse("X")}}).str(), "X^2 - 1");
}

TEST(MultiPoly, EvaluationMatchesSubstitution) {
  const auto p = MultiPoly::parse("3*X^2*Y - 1/2*Y^3 + X - 7");
  CounterRng rng(5);
  for (int i = 0; i < 50; ++i) {
    const Rational x = rng.rational(9, 4), y = rng.rational(9, 4);
    const Rational expect = Rational(3) * x * x * y - Rational::parse("1/2") * y * y * y + x - Rational(7);
    EXPECT_EQ(p.evaluate({{"X", x}, {"Y", y}}), expect);
  }
}

TEST(MultiPoly, TruncateAndCount) {
  const auto p = MultiPoly::parse("(1 + T)^3 * (X + Y)");
  EXPECT_EQ(p.truncate("T", 2), MultiPoly::parse("(1 + 3*T) * (X + Y)"));
  std::vector<std::string> only{"X"};
  EXPECT_EQ(count_terms(p), 8u);
  EXPECT_EQ(count_terms(p, &only), 2u);  // {X^0, X^1}
}

TEST(MultiPoly, ParseErrors) {
  EXPECT_THROW(MultiPoly::parse("X +"), PreconditionError);
  EXPECT_THROW(MultiPoly::parse("X^-1"), PreconditionError);
  EXPECT_THROW(MultiPoly::parse("(X"), PreconditionError);
}

TEST(Univariate, ProductOfLinearFactorsMatchesNaive) {
  CounterRng rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Rational> roots(1 + rng.below(70));
    for (auto& r : roots) r = rng.rational(20, 6);
    EXPECT_EQ(product_of_linear_factors(roots), oracle::naive_product(roots));
  }
  EXPECT_EQ(product_of_linear_factors({}), DenseQ{Rational(1)});
}

TEST(Univariate, DenseMultiplyMatchesSchoolbook) {
  CounterRng rng(22);
  for (int trial = 0; trial < 10; ++trial) {
    DenseZ a(1 + rng.below(100)), b(1 + rng.below(100));
    for (auto& x : a) x = Integer(static_cast<long>(rng.range(-1000, 1000)));
    for (auto& x : b) x = Integer(static_cast<long>(rng.range(-1000, 1000)));
    DenseZ expect(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) expect[i + j] += a[i] * b[j];
    EXPECT_EQ(multiply_dense(a, b), expect);
  }
}

TEST(Univariate, GcdSquarefreeDerivative) {
  const auto p = MultiPoly::parse("(Y - 1)^2 * (Y + 2)");
  const auto q = MultiPoly::parse("(Y - 1) * (Y - 5)");
  EXPECT_EQ(uni_gcd(p, q).str(), "Y - 1");
  EXPECT_EQ(squarefree_part(p), MultiPoly::parse("(Y - 1) * (Y + 2)"));
  EXPECT_EQ(uni_derivative(p), p.derivative("Y"));
  EXPECT_EQ(uni_rem(p, q).str(), "28*Y - 28");  // Y^3 - 3Y + 2 = (Y + 6) q + 28Y - 28
  EXPECT_THROW(uni_gcd(MultiPoly(), MultiPoly()), PreconditionError);
  EXPECT_THROW(uni_gcd(MultiPoly::parse("X"), MultiPoly::parse("Y")), PreconditionError);
}

TEST(Interpolate, RecoversPolynomialInBasis) {
  const auto basis = MonomialBasis::total_degree({"X", "Y"}, 2);
  EXPECT_EQ(basis.size(), 6u);
  const auto f = MultiPoly::parse("2*X^2 - X*Y + 3*Y - 1/3");
  std::vector<Point> pts;
  std::vector<Rational> vals;
  for (long i = 0; i < 4; ++i)
    for (long j = 0; j < 3; ++j) {
      pts.push_back({Rational(i), Rational(j * j + i)});
      vals.push_back(f.evaluate({{"X", Rational(i)}, {"Y", Rational(j * j + i)}}));
    }
  EXPECT_EQ(basis.combine(interpolate(pts, vals, basis)), f.with_variables({"X", "Y"}));
}

TEST(Interpolate, SingularAndOutOfSpan) {
  const auto basis = MonomialBasis::total_degree({"Y"}, 2);
  EXPECT_THROW(interpolate({{Rational(1)}, {Rational(1)}, {Rational(2)}}, {1, 1, 4}, basis), SingularSystem);
  // Y^3 is outside {1, Y, Y^2}
  EXPECT_THROW(interpolate({{Rational(0)}, {Rational(1)}, {Rational(2)}, {Rational(3)}}, {0, 1, 8, 27}, basis), NotInSpan);
  EXPECT_THROW(MonomialBasis::from_polys({MultiPoly::parse("2*Y")}, {"Y"}), PreconditionError);
}
