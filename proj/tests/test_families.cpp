#include <gtest/gtest.h>

#include "elimkit/expand.hpp"
#include "elimkit/families.hpp"
#include "elimkit/slp_text.hpp"
#include "oracles.hpp"

using namespace elimkit;

TEST(Fd, ClosedFormAndSize) {
  for (std::uint64_t d = 1; d <= 20; ++d) {
    const Slp f = fd_slp(d);
    // (U^d - 1) * sum_j (U Y)^j, built independently
    MultiPoly sum = MultiPoly::constant(Rational(0), {"U", "Y"});
    for (std::uint64_t j = 0; j <= d; ++j) sum = sum + MultiPoly::parse("U*Y").pow(static_cast<std::int64_t>(j));
    const auto expect = (MultiPoly::parse("U").pow(static_cast<std::int64_t>(d)) - MultiPoly::parse("1")) * sum;
    EXPECT_EQ(expand(f), expect.with_variables({"U", "Y"})) << d;
    EXPECT_EQ(fd_closed_form(d), expand(f));
  }
  // d = 2^(r+1) - 1: r + 1 squarings plus r products
  EXPECT_LE(profile(fd_slp(7)).size_over_params, 5u);
  EXPECT_LE(profile(fd_slp(15)).size_over_params, 7u);
}

TEST(Fd, OmegaZeroSetIsTheRootsOfUnity) {
  const PrimeField f(13);
  for (std::uint64_t d : {2ULL, 3ULL, 4ULL, 6ULL, 12ULL}) {
    std::size_t zeros = 0;
    for (std::uint64_t u = 0; u < 13; ++u) {
      auto w = omega_d(f, d, Residue{u});
      bool all = true;
      for (auto x : w) all = all && f.is_zero(x);
      if (all) {
        ++zeros;
        EXPECT_EQ(oracle::order_mod(u, 13) != 0 && d % oracle::order_mod(u, 13) == 0, true);
      }
    }
    EXPECT_EQ(zeros, d);
  }
}

TEST(Pn, ExpansionMatchesProductOfRoots) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const MultiPoly e = expand(pn_slp(n));
    CounterRng rng(n);
    for (int s = 0; s < 5; ++s) {
      const Rational t = rng.rational(4, 3);
      std::vector<Rational> u(n);
      for (auto& x : u) x = rng.rational(4, 3);
      std::vector<Rational> roots;
      for (std::uint64_t j = 0; j < (1ULL << n); ++j) {
        Rational m(1);
        for (std::size_t i = 0; i < n; ++i)
          if (j >> i & 1ULL) m *= u[i];
        roots.push_back(Rational(static_cast<long>(j)) + t * m);
      }
      std::map<std::string, Rational> at{{"T", t}};
      for (std::size_t i = 0; i < n; ++i) at[indexed("U", i + 1)] = u[i];
      EXPECT_EQ(e.substitute(at), dense_to_multipoly(oracle::naive_product(roots), "Y").with_variables(
                                      e.substitute(at).variables()));
      EXPECT_EQ(pn_specialized(n, t, u), dense_to_multipoly(oracle::naive_product(roots), "Y"));
    }
  }
  EXPECT_EQ(pn_specialized(2, Rational(0), {Rational(7), Rational(9)}).str(), "Y^4 - 6*Y^3 + 11*Y^2 - 6*Y");
  EXPECT_THROW(pn_specialized(4, Rational(1), {1, 1, 1, 1}, 10), BudgetExceeded);
}

TEST(FirstOrder, ElementarySymmetricBySubsets) {
  for (long N : {1L, 2L, 4L, 8L, 16L}) {
    const auto e = elementary_symmetric_range(static_cast<std::uint64_t>(N));
    for (long k = 0; k <= N; ++k) EXPECT_EQ(e[k], oracle::esym_subsets(oracle::range(N), k)) << N << " " << k;
  }
}

TEST(FirstOrder, EllMatrixBySubsets) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const long N = 1L << n;
    const auto m = ell_matrix(n);
    for (long j = 0; j < N; ++j) {
      std::vector<long> rest;
      for (long x = 0; x < N; ++x)
        if (x != j) rest.push_back(x);
      for (long k = 1; k <= N; ++k) EXPECT_EQ(m(k - 1, j), oracle::esym_subsets(rest, k - 1)) << n << " " << k << " " << j;
    }
  }
  const PrimeField f(1'000'003);
  const auto m = ell_matrix(5);
  const auto mm = ell_matrix_mod(5, f);
  for (std::size_t i = 0; i < 32; ++i)
    for (std::size_t j = 0; j < 32; ++j) EXPECT_EQ(mm(i, j), f.from_integer(m(i, j)));
}

TEST(FirstOrder, StepwiseTruncationEqualsFullExpansion) {
  for (std::size_t n = 1; n <= 3; ++n) {
    auto vars = pn_parameters(n);
    vars.push_back("Y");
    EXPECT_EQ(expand(pn_slp(n)).truncate("T", 2).with_variables(vars), pn_mod_t2_expanded(n)) << n;
  }
}

TEST(FirstOrder, SignedFormulaHoldsAndPrintedFailsAtOddK) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto oracle_poly = pn_mod_t2_expanded(n);
    EXPECT_EQ(first_order_polynomial(pn_first_order(n, SignConvention::True)), oracle_poly);
    EXPECT_FALSE(first_order_polynomial(pn_first_order(n, SignConvention::Printed)) == oracle_poly);
  }
  // beta_1 = -(0 + 1 + 2 + 3), beta_2 = e_2 = 11 for n = 2
  const auto fo = pn_first_order(2);
  EXPECT_EQ(fo.beta[0], Integer(-6));
  EXPECT_EQ(fo.beta[1], Integer(11));
  EXPECT_EQ(fo.beta[3], Integer(0));
}

TEST(Fn, SizesAndTermCounts) {
  for (std::size_t n = 1; n <= 12; ++n) {
    const auto p = profile(fn_slp(n).F);
    EXPECT_EQ(p.size_over_params, n - 1);
    EXPECT_LE(profile(rn_slp(n)).total_ops, 12 * n + 8);
  }
  for (std::size_t n = 1; n <= 6; ++n) {
    const MultiPoly e = expand(fn_slp(n).F);
    EXPECT_EQ(e, fn_closed_form(n).with_variables(e.variables()));
    std::vector<std::string> xs;
    for (std::size_t i = 1; i <= n; ++i) xs.push_back(indexed("X", i));
    EXPECT_EQ(count_terms(e, &xs), std::size_t{1} << n);
    std::size_t three = 1;
    for (std::size_t i = 0; i < n; ++i) three *= 3;
    EXPECT_EQ(fn_product_part(n).size(), three);
  }
}

TEST(Fn, HypercubeValues) {
  const std::size_t n = 3;
  const auto F = fn_slp(n).F;
  const std::vector<Rational> u{Rational(2), Rational::parse("1/3"), Rational(-5)};
  const Rational t = Rational::parse("7/2");
  for (std::uint64_t j = 0; j < 8; ++j) {
    std::vector<int> eps(n);
    std::map<std::string, Rational> at{{"T", t}};
    Rational mono(1);
    for (std::size_t i = 0; i < n; ++i) {
      eps[i] = static_cast<int>(j >> i & 1ULL);
      at[indexed("U", i + 1)] = u[i];
      at[indexed("X", i + 1)] = Rational(eps[i]);
      if (eps[i]) mono *= u[i];
    }
    EXPECT_EQ(evaluate_at(F, at)[0], Rational(static_cast<long>(j)) + t * mono);
    EXPECT_EQ(fn_hypercube_value(t, u, eps), Rational(static_cast<long>(j)) + t * mono);
  }
}

TEST(GTilde, ChainReproducesFnOnTheHypercube) {
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto s = gtilde_system(n);
    EXPECT_EQ(s.equations.size(), n + (3 * n - 1 - n));  // n idempotency + (2n-1) chain equations
    CounterRng rng(n);
    std::vector<Rational> u(n);
    for (auto& x : u) x = rng.rational(5, 3);
    const Rational t = rng.rational(5, 3);
    for (std::uint64_t j = 0; j < (1ULL << n); ++j) {
      std::vector<Rational> x(n);
      std::vector<int> eps(n);
      for (std::size_t i = 0; i < n; ++i) {
        eps[i] = static_cast<int>(j >> i & 1ULL);
        x[i] = Rational(eps[i]);
      }
      const auto X = s.chain(u, x);
      // every chain equation vanishes at the chain values
      std::vector<Rational> point{t};
      point.insert(point.end(), u.begin(), u.end());
      point.insert(point.end(), X.begin(), X.end());
      for (const auto& eq : s.equations) EXPECT_TRUE(eq.evaluate(std::span<const Rational>(point)).is_zero());
      EXPECT_EQ(s.value(t, u, x), fn_hypercube_value(t, u, eps));
      EXPECT_EQ(s.F.evaluate(std::span<const Rational>(point)), fn_hypercube_value(t, u, eps));
    }
  }
  EXPECT_THROW(gtilde_system(1), PreconditionError);
}

TEST(Rn, ClosedForm) {
  for (std::size_t n = 1; n <= 4; ++n) {
    const MultiPoly e = expand(rn_slp(n));
    EXPECT_EQ(e, rn_closed_form(n).with_variables(e.variables()));
  }
}

TEST(Phi, CountsAndBounds) {
  for (std::size_t n = 2; n <= 12; ++n) {
    EXPECT_EQ(phi_constraint_count(n), 4 * n + 10);
    const auto g = sample_gamma_n(n, 3);
    EXPECT_EQ(g.size(), 4 * n + 10);
    const long b = 3L * static_cast<long>(n * n * n);
    for (const auto& row : g)
      for (long v : row) {
        EXPECT_LE(v, b);
        EXPECT_GE(v, -b);
      }
    const auto sparse = phi_formula(n, PhiVariant::Sparse, 3);
    EXPECT_EQ(sparse.bound_variables, 8 * n * n + 20 * n - 9);
    const auto circuit = phi_formula(n, PhiVariant::Circuit, 3);
    EXPECT_EQ(circuit.bound_variables, 2 * n + 2);
    EXPECT_EQ(circuit.text.rfind("E ", 0), 0u);
  }
  EXPECT_EQ(phi_formula(5, PhiVariant::Circuit, 9).text, phi_formula(5, PhiVariant::Circuit, 9).text);
  EXPECT_NE(sample_gamma_n(5, 9), sample_gamma_n(5, 10));
}

TEST(Phi, CircuitVariantEmbedsTheProgram) {
  const auto f = phi_formula(3, PhiVariant::Circuit, 0);
  const auto pos = f.text.find(":=");
  ASSERT_NE(pos, std::string::npos);
  std::string prog = f.text.substr(pos + 2);
  for (auto& c : prog)
    if (c == ';') c = '\n';
  EXPECT_EQ(parse_slp(prog), rn_slp(3));
}
