#include <gtest/gtest.h>

#include "elimkit/expand.hpp"
#include "elimkit/slp_random.hpp"
#include "elimkit/slp_text.hpp"
#include "oracles.hpp"

using namespace elimkit;

namespace {

// (U*Y + 1) * Y with a division of the parameter by a constant.
const char* kSample = R"(slp v1
param U
var Y
t0 = mul U Y
t1 = const 1
t2 = add t0 t1
t3 = mul t2 Y
t4 = const 2
t5 = div U t4
output t3
output t5 !=0
)";

}  // namespace

TEST(SlpText, ParseSerializeRoundTrip) {
  const Slp f = parse_slp(kSample);
  EXPECT_EQ(f.params, std::vector<std::string>{"U"});
  EXPECT_EQ(f.vars, std::vector<std::string>{"Y"});
  EXPECT_EQ(f.outputs.size(), 2u);
  EXPECT_EQ(f.outputs[1].mark, SignMark::NonZero);
  EXPECT_EQ(parse_slp(serialize_slp(f)), f);
}

TEST(SlpText, ParseErrorsCarryLineNumbers) {
  try {
    parse_slp("slp v1\nvar Y\nt0 = mul Y Z\noutput t0\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_slp("slp v1\nvar Y\nt0 = pow Y Y\noutput t0\n"), ParseError);
  EXPECT_THROW(parse_slp("var Y\noutput Y\n"), ParseError);
}

TEST(Slp, EvaluateMatchesHandComputation) {
  const Slp f = parse_slp(kSample);
  const auto v = evaluate_at(f, {{"U", Rational(3)}, {"Y", Rational::parse("1/2")}});
  // (3/2 + 1) * 1/2 = 5/4
  EXPECT_EQ(v[0].str(), "5/4");
  EXPECT_EQ(v[1].str(), "3/2");
  EXPECT_THROW(evaluate_at(f, {{"U", Rational(3)}}), PreconditionError);
}

TEST(Slp, EvaluationOverPrimeField) {
  const Slp f = parse_slp(kSample);
  const PrimeField p(101);
  std::vector<Residue> params{Residue{3}}, vars{Residue{51}};  // 51 = 1/2 mod 101
  const auto v = evaluate(f, p, std::span<const Residue>(params), std::span<const Residue>(vars));
  EXPECT_EQ(v[0], p.from_rational(Rational::parse("5/4")));
}

TEST(Slp, PoleIsReported) {
  SlpBuilder b;
  const auto u = b.param("U");
  const auto y = b.var("Y");
  b.output(b.div(y, u));
  const Slp f = b.build();
  EXPECT_THROW(evaluate_at(f, {{"U", Rational(0)}, {"Y", Rational(1)}}), PoleError);
  EXPECT_EQ(evaluate_at(f, {{"U", Rational(2)}, {"Y", Rational(1)}})[0].str(), "1/2");
}

TEST(Slp, ValidationRejectsVariableDivisor) {
  SlpBuilder b;
  const auto y = b.var("Y");
  b.output(b.div(b.constant(Rational(1)), y));
  const auto r = validate(b.build());
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.reason, "divisor depends on variable");
  SlpBuilder c;
  const auto u = c.param("U");
  c.output(c.div(c.constant(Rational(1)), u));
  EXPECT_TRUE(validate(c.build()).ok);
  EXPECT_FALSE(validate(c.build(), DivisionMode::Total).ok);
}

TEST(Slp, BuilderRequiresInputsFirst) {
  SlpBuilder b;
  const auto y = b.var("Y");
  b.add(y, y);
  EXPECT_THROW(b.var("Z"), PreconditionError);
  SlpBuilder c;
  c.var("Y");
  EXPECT_THROW(c.param("Y"), PreconditionError);
  EXPECT_THROW(c.var("1bad"), PreconditionError);
}

TEST(Slp, ProfileCountsByDefinition) {
  // Y^2 by squaring, U*Y (scalar over K), U*U (constant over K), 3*Y.
  SlpBuilder b;
  const auto u = b.param("U");
  const auto y = b.var("Y");
  const auto y2 = b.mul(y, y);          // counts over K and over Q
  const auto uy = b.mul(u, y);          // counts over Q only
  const auto uu = b.mul(u, u);          // counts over Q only
  const auto cy = b.mul(b.constant(Rational(3)), y);  // counts nowhere
  const auto s = b.add(b.add(y2, uy), b.add(uu, cy));
  const auto d = b.div(s, u);           // non-constant divisor: counts over Q
  b.output(d);
  const auto p = profile(b.build());
  EXPECT_EQ(p.size_over_params, 1u);
  EXPECT_EQ(p.size_over_scalars, 4u);
  EXPECT_EQ(p.total_ops, 8u);
  EXPECT_EQ(p.var_degree_bound[0], 2u);
  EXPECT_EQ(p.param_degree_bound[0], 2u);
}

TEST(Slp, RearrangedSize) {
  // m = L^2 + (2t-1)L + q(L+t+1)
  EXPECT_EQ(rearranged_size(2, 1, 1), Integer(4 + 2 + 4));
  EXPECT_EQ(rearranged_size(3, 2, 2), Integer(9 + 9 + 12));
}

TEST(Expand, MatchesHandExpansion) {
  const Slp f = parse_slp(kSample);
  EXPECT_EQ(expand(f, 0).str(), "U*Y^2 + Y");
  EXPECT_EQ(expand(f, 1).str(), "1/2*U");
  EXPECT_THROW(expand(f, 2), PreconditionError);
}

TEST(Expand, RejectsNonConstantDivision) {
  SlpBuilder b;
  const auto u = b.param("U");
  const auto y = b.var("Y");
  b.output(b.div(y, u));
  EXPECT_THROW(expand(b.build()), UnsupportedDivision);
}

TEST(Expand, BudgetIsEnforced) {
  SlpBuilder b;
  std::vector<SlpBuilder::Ref> xs;
  for (int i = 0; i < 8; ++i) xs.push_back(b.var("X" + std::to_string(i)));
  auto acc = b.add(xs[0], b.constant(Rational(1)));
  for (int i = 1; i < 8; ++i) acc = b.mul(acc, b.add(xs[i], b.constant(Rational(1))));
  b.output(acc);
  EXPECT_EQ(expand(b.build()).size(), 256u);
  EXPECT_THROW(expand(b.build(), 0, 100), BudgetExceeded);
}

TEST(Expand, RandomProgramsAgreeWithEvaluation) {
  const RationalField q;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const Slp f = random_slp(s);
    ASSERT_TRUE(validate(f).ok);
    const MultiPoly e = expand(f);
    CounterRng rng(s, 77);
    for (int k = 0; k < 5; ++k) {
      std::vector<Rational> pv(f.params.size()), xv(f.vars.size());
      for (auto& x : pv) x = rng.rational(5, 3);
      for (auto& x : xv) x = rng.rational(5, 3);
      std::vector<Rational> all = pv;
      all.insert(all.end(), xv.begin(), xv.end());
      EXPECT_EQ(e.evaluate(std::span<const Rational>(all)),
                evaluate(f, q, std::span<const Rational>(pv), std::span<const Rational>(xv))[0]);
    }
  }
}

TEST(Expand, RandomProgramsAreDeterministic) {
  EXPECT_EQ(random_slp(42), random_slp(42));
  EXPECT_NE(serialize_slp(random_slp(42)), serialize_slp(random_slp(43)));
}
