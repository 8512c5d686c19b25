#include <gtest/gtest.h>

#include "elimkit/expand.hpp"
#include "elimkit/harness.hpp"
#include "elimkit/slp_text.hpp"
#include "oracles.hpp"

using namespace elimkit;

namespace {
std::vector<std::vector<Rational>> to_rows(const Matrix<Integer>& m) {
  std::vector<std::vector<Rational>> out(m.rows(), std::vector<Rational>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = Rational(m(i, j));
  return out;
}
}  // namespace

TEST(Elimination, MatchesDirectProductOfRoots) {
  for (std::size_t n = 1; n <= 5; ++n) {
    CounterRng rng(100 + n);
    const Rational t = rng.rational(6, 5);
    std::vector<Rational> u(n);
    for (auto& x : u) x = rng.rational(6, 5);
    std::vector<Rational> roots;
    for (std::uint64_t j = 0; j < (1ULL << n); ++j) {
      std::vector<int> eps(n);
      for (std::size_t i = 0; i < n; ++i) eps[i] = static_cast<int>(j >> i & 1ULL);
      roots.push_back(fn_hypercube_value(t, u, eps));
    }
    EXPECT_EQ(eliminate_hypercube(fn_slp(n), t, u), dense_to_multipoly(oracle::naive_product(roots), "Y"));
  }
  EXPECT_EQ(eliminate_hypercube(fn_slp(2), Rational(0), {Rational(1), Rational(1)}).str(), "Y^4 - 6*Y^3 + 11*Y^2 - 6*Y");
}

TEST(Elimination, CustomFamilyAndBudget) {
  // F = X1 + X2 with no parameters: roots 0, 1, 1, 2
  const auto fam = hypercube_family(parse_slp("slp v1\nvar X1\nvar X2\nt0 = add X1 X2\noutput t0\n"));
  const auto p = eliminate_hypercube(fam, Rational(5), {});
  EXPECT_EQ(p, MultiPoly::parse("Y * (Y - 1)^2 * (Y - 2)"));
  EXPECT_FALSE(separability_check(p).separable);
  EXPECT_EQ(separability_check(p).gcd_with_derivative.str(), "Y - 1");
  EXPECT_TRUE(separability_check(eliminate_hypercube(fn_slp(2), Rational(0), {1, 1})).separable);
  EXPECT_THROW(eliminate_hypercube(fn_slp(4), Rational(1), {1, 1, 1, 1}, 16), BudgetExceeded);
  EXPECT_THROW(eliminate_hypercube_first_order(fam), PreconditionError);
}

TEST(Certificates, IndependenceRankMatchesBruteForce) {
  for (std::size_t n = 1; n <= 2; ++n)
    EXPECT_EQ(independence_rank(n).rank, oracle::brute_rank(to_rows(ell_matrix(n))));
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto c = independence_rank(n);
    EXPECT_EQ(c.rank, std::size_t{1} << n);
    EXPECT_TRUE(verify_certificate(c, ell_matrix(n)));
  }
  const auto c = independence_rank(8, FieldKind::Prime);
  EXPECT_EQ(c.rank, 256u);
  EXPECT_EQ(c.modulus, kCertificatePrime);
  EXPECT_TRUE(verify_certificate(c, ell_matrix_mod(8, PrimeField(kCertificatePrime))));
  EXPECT_THROW(independence_rank(7, FieldKind::Rationals), PreconditionError);
  EXPECT_THROW(independence_rank(11, FieldKind::Prime), PreconditionError);
}

TEST(Certificates, TamperedCertificateIsRejected) {
  auto c = independence_rank(3);
  c.rank += 1;
  EXPECT_FALSE(verify_certificate(c, ell_matrix(3)));
  auto d = independence_rank(3);
  d.pivots[0].row = 99;
  EXPECT_THROW(verify_certificate(d, ell_matrix(3)), PreconditionError);
  // a singular minor: duplicate a row of the matrix and claim full rank
  auto m = ell_matrix(2);
  for (std::size_t j = 0; j < 4; ++j) m(1, j) = m(0, j);
  EXPECT_FALSE(verify_certificate(independence_rank(2), m));
}

TEST(Certificates, LkRankAtPoints) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto r = lk_at_points_rank(n, 7);
    EXPECT_TRUE(r.certificate.full());
    EXPECT_GE(r.attempts.size(), 1u);
    EXPECT_LE(r.attempts.size(), static_cast<std::size_t>(kMaxLkRetries + 1));
    EXPECT_TRUE(verify_certificate(r.certificate, lk_matrix(n, r.certificate.points)));
  }
  // column j holds L_k(u_j), the T-coefficient of Y^(N-k) in the expanded P_n at U = u_j
  const std::vector<std::vector<Rational>> pts{{Rational(2), Rational(3)}, {Rational(1), Rational(1)},
                                               {Rational(0), Rational(5)}, {Rational(-1), Rational(2)}};
  const auto m = lk_matrix(2, pts);
  const MultiPoly p2 = expand(pn_slp(2));
  for (std::size_t j = 0; j < pts.size(); ++j) {
    const MultiPoly at = p2.substitute({{"U1", pts[j][0]}, {"U2", pts[j][1]}}).with_variables({"T", "Y"});
    for (std::uint32_t k = 1; k <= 4; ++k) EXPECT_EQ(Rational(m(k - 1, j)), at.coefficient({1, 4 - k})) << j << " " << k;
  }
  // modular and rational ranks agree on the same points
  const auto p = random_hypercube_points(3, 11);
  EXPECT_EQ(lk_rank_at(3, p, FieldKind::Rationals).rank, lk_rank_at(3, p, FieldKind::Prime).rank);
  // repeated points cannot give full rank
  std::vector<std::vector<Rational>> same(4, {Rational(1), Rational(2)});
  EXPECT_EQ(lk_rank_at(2, same, FieldKind::Rationals).rank, 1u);
}

TEST(Certificates, TangentRank) {
  for (std::uint64_t d = 1; d <= 16; ++d) {
    const auto p = least_prime_congruent_one(d, 1000);
    const auto c = tangent_rank_paradigm1(d, p);
    EXPECT_EQ(c.rank, d);
    EXPECT_EQ(c.pivots.size(), d);
    EXPECT_TRUE(verify_certificate(c, tangent_matrix(d, PrimeField(p), find_primitive_root(PrimeField(p), d))));
  }
  EXPECT_THROW(tangent_rank_paradigm1(5, 7), PreconditionError);
  EXPECT_THROW(tangent_rank_paradigm1(3, 9), PreconditionError);
}

TEST(Certificates, TangentMatrixEntries) {
  const PrimeField f(13);
  const Residue z{3};  // order 3 mod 13
  const auto a = tangent_matrix(3, f, z);
  for (std::uint64_t k = 0; k < 3; ++k)
    for (std::uint64_t j = 0; j < 3; ++j) {
      std::uint64_t v = 3;
      for (std::uint64_t e = 0; e < k * j; ++e) v = v * 3 % 13;
      EXPECT_EQ(a(k, j + 1).v, v);
    }
}

TEST(Blowup, CertifiedLowerBound) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto r = blowup_report(n, 1);
    EXPECT_EQ(r.certified_lower_bound, std::uint64_t{1} << n);
  }
}

TEST(Probes, ParadigmOneFiberSize) {
  for (std::uint64_t d = 2; d <= 12; ++d) {
    const auto p = least_prime_congruent_one(d, 100);
    const auto r = robustness_probe_paradigm1(d, p);
    EXPECT_EQ(r.fiber.size(), d);
    for (auto u : r.fiber) EXPECT_EQ(d % oracle::order_mod(u, p), 0u);
  }
  EXPECT_THROW(robustness_probe_paradigm1(4, 7), PreconditionError);
}

TEST(Probes, ParadigmTwoSlices) {
  for (std::size_t n = 1; n <= 5; ++n) {
    const auto r = robustness_probe_paradigm2(n, 10, 3);
    EXPECT_TRUE(r.slice_constant);
    EXPECT_TRUE(r.varies_with_t);
    // t = 0 slice is prod (Y - j)
    std::vector<Rational> roots;
    for (long j = 0; j < (1L << n); ++j) roots.push_back(Rational(j));
    EXPECT_EQ(r.slice_polynomial, dense_to_multipoly(oracle::naive_product(roots), "Y").str());
  }
}

TEST(Probes, DistinctnessOnGammaN) {
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto r = distinctness_probe_gamma_n(n, 40, 5);
    EXPECT_EQ(r.distinct_pairs + r.equal_pairs, 40u);
    EXPECT_TRUE(r.counterexamples.empty());
  }
}
