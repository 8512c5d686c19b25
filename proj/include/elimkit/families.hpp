#pragma once

// Explicit families: F_d and omega_d, the hypercube product P_n with its
// first-order data, F_n with its sparse equation chain, R_n = Z*F_n and the
// existential formulas built from R_n.

#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "elimkit/errors.hpp"
#include "elimkit/expand.hpp"
#include "elimkit/linalg.hpp"
#include "elimkit/multipoly.hpp"
#include "elimkit/random.hpp"
#include "elimkit/rings.hpp"
#include "elimkit/slp.hpp"
#include "elimkit/slp_text.hpp"
#include "elimkit/univariate.hpp"

namespace elimkit {

inline std::string indexed(const std::string& base, std::size_t i) { return base + std::to_string(i); }

/// Bit i (1-based) of j: the exponent [j]_i with j = sum 2^(i-1) [j]_i.
inline unsigned hypercube_bit(std::uint64_t j, std::size_t i) { return static_cast<unsigned>((j >> (i - 1)) & 1U); }

template <EvaluationRing R>
typename R::Element ring_pow(const R& ring, typename R::Element a, std::uint64_t e) {
  auto r = ring.one();
  while (e) {
    if (e & 1) r = ring.mul(r, a);
    a = ring.mul(a, a);
    e >>= 1;
  }
  return r;
}

namespace detail {
inline SlpBuilder::Ref power_ref(SlpBuilder& b, SlpBuilder::Ref x, std::uint64_t e) {
  std::optional<SlpBuilder::Ref> acc;
  SlpBuilder::Ref sq = x;
  while (e) {
    if (e & 1) acc = acc ? b.mul(*acc, sq) : sq;
    e >>= 1;
    if (e) sq = b.mul(sq, sq);
  }
  return acc ? *acc : b.constant(Rational(1));
}

inline SlpBuilder::Ref product_ref(SlpBuilder& b, const std::vector<SlpBuilder::Ref>& f, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return f[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  const auto l = product_ref(b, f, lo, mid);
  const auto r = product_ref(b, f, mid, hi);
  return b.mul(l, r);
}

inline bool is_mersenne_form(std::uint64_t d) { return d >= 1 && ((d + 1) & d) == 0; }
}  // namespace detail

// ---------------------------------------------------------------------------
// F_d = sum_{j=0}^d (U^d - 1) U^j Y^j

/// Program for F_d with parameter U and variable Y: product form
/// (U^d-1) prod_{k=0}^{r} (1 + (UY)^(2^k)) when d = 2^(r+1)-1, Horner otherwise.
inline Slp fd_slp(std::uint64_t d) {
  if (d < 1) throw PreconditionError("fd_slp: d must be positive");
  SlpBuilder b;
  const auto u = b.param("U");
  const auto y = b.var("Y");
  const auto one = b.constant(Rational(1));
  const auto head = b.sub(detail::power_ref(b, u, d), one);
  const auto uy = b.mul(u, y);
  SlpBuilder::Ref body;
  if (detail::is_mersenne_form(d)) {
    auto sq = uy;
    body = b.add(one, sq);
    for (std::uint64_t k = 2; k <= d / 2 + 1; k <<= 1) {
      sq = b.mul(sq, sq);
      body = b.mul(body, b.add(one, sq));
    }
  } else {
    body = b.add(one, uy);
    for (std::uint64_t i = 2; i <= d; ++i) body = b.add(one, b.mul(uy, body));
  }
  b.output(b.mul(head, body));
  return b.build();
}

/// Closed form of F_d as a MultiPoly in U, Y.
inline MultiPoly fd_closed_form(std::uint64_t d) {
  MultiPoly p({"U", "Y"});
  for (std::uint64_t j = 0; j <= d; ++j) {
    p.add_term({static_cast<std::uint32_t>(d + j), static_cast<std::uint32_t>(j)}, Rational(1));
    p.add_term({static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(j)}, Rational(-1));
  }
  return p;
}

/// Coefficient vector ((u^d-1), (u^d-1)u, ..., (u^d-1)u^d).
template <EvaluationRing R>
std::vector<typename R::Element> omega_d(const R& ring, std::uint64_t d, const typename R::Element& u) {
  std::vector<typename R::Element> out;
  out.reserve(d + 1);
  auto c = ring.sub(ring_pow(ring, u, d), ring.one());
  for (std::uint64_t j = 0; j <= d; ++j) {
    out.push_back(c);
    c = ring.mul(c, u);
  }
  return out;
}

// ---------------------------------------------------------------------------
// P_n = prod_{j=0}^{2^n-1} (Y - (j + T prod_i U_i^[j]_i))

inline std::vector<std::string> pn_parameters(std::size_t n) {
  std::vector<std::string> v{"T"};
  for (std::size_t i = 1; i <= n; ++i) v.push_back(indexed("U", i));
  return v;
}

/// Program for P_n (params T, U1..Un; var Y), factors multiplied in a balanced tree.
inline Slp pn_slp(std::size_t n) {
  if (n < 1 || n > 24) throw PreconditionError("pn_slp: need 1 <= n <= 24");
  SlpBuilder b;
  const auto t = b.param("T");
  std::vector<SlpBuilder::Ref> u;
  for (std::size_t i = 1; i <= n; ++i) u.push_back(b.param(indexed("U", i)));
  const auto y = b.var("Y");
  const std::uint64_t count = 1ULL << n;
  std::vector<SlpBuilder::Ref> mono(count), factors;
  factors.reserve(count);
  for (std::uint64_t j = 0; j < count; ++j) {
    std::optional<SlpBuilder::Ref> m;
    if (j != 0) {
      const auto top = static_cast<std::size_t>(std::bit_width(j));  // highest set bit, 1-based
      const std::uint64_t rest = j & ~(1ULL << (top - 1));
      m = rest == 0 ? u[top - 1] : b.mul(mono[rest], u[top - 1]);
      mono[j] = *m;
    }
    const auto root = b.add(b.constant(Rational(static_cast<long>(j))), m ? b.mul(t, *m) : t);
    factors.push_back(b.sub(y, root));
  }
  b.output(detail::product_ref(b, factors, 0, factors.size()));
  return b.build();
}

/// Roots j + t * prod u_i^[j]_i of the specialized product.
inline std::vector<Rational> pn_roots(std::size_t n, const Rational& t, const std::vector<Rational>& u) {
  if (u.size() != n) throw PreconditionError("pn_roots: expected " + std::to_string(n) + " values for U");
  const std::uint64_t count = 1ULL << n;
  std::vector<Rational> mono(count, Rational(1)), roots(count);
  for (std::uint64_t j = 0; j < count; ++j) {
    if (j != 0) {
      const auto top = static_cast<std::size_t>(std::bit_width(j));
      mono[j] = mono[j & ~(1ULL << (top - 1))] * u[top - 1];
    }
    roots[j] = Rational(static_cast<long>(j)) + t * mono[j];
  }
  return roots;
}

/// P_n(t, u, Y) as a monic univariate polynomial of degree 2^n.
inline MultiPoly pn_specialized(std::size_t n, const Rational& t, const std::vector<Rational>& u,
                                std::optional<std::size_t> budget = std::nullopt) {
  if (n < 1 || n > 20) throw PreconditionError("pn_specialized: need 1 <= n <= 20");
  const std::size_t limit = budget.value_or(default_term_budget());
  if ((1ULL << n) + 1 > limit) throw BudgetExceeded("expansion too large", (1ULL << n) + 1);
  return dense_to_multipoly(product_of_linear_factors(pn_roots(n, t, u)), "Y");
}

/// Side limit for the exact integer ell-matrix (entries grow to thousands of bits).
inline constexpr std::size_t kMaxExactEllN = 9;
inline constexpr std::size_t kMaxModularEllN = 12;

/// Elementary symmetric e_0..e_N of {0, ..., N-1}.
inline std::vector<Integer> elementary_symmetric_range(std::uint64_t count) {
  std::vector<Integer> e(count + 1, 0);
  e[0] = 1;
  for (std::uint64_t j = 0; j < count; ++j) {
    const Integer v(static_cast<unsigned long>(j));
    for (std::uint64_t k = j + 1; k >= 1; --k) e[k] += v * e[k - 1];
  }
  return e;
}

/// Entry (k-1, j) = l_{k,j} = e_{k-1}({0..2^n-1} \ {j}), k = 1..2^n.
inline Matrix<Integer> ell_matrix(std::size_t n) {
  if (n < 1 || n > kMaxExactEllN)
    throw PreconditionError("ell_matrix: exact matrix limited to 1 <= n <= " + std::to_string(kMaxExactEllN));
  const std::uint64_t N = 1ULL << n;
  const auto e = elementary_symmetric_range(N);
  Matrix<Integer> m(N, N);
  for (std::uint64_t j = 0; j < N; ++j) {
    const Integer jj(static_cast<unsigned long>(j));
    m(0, j) = 1;
    for (std::uint64_t k = 1; k < N; ++k) m(k, j) = e[k] - jj * m(k - 1, j);
  }
  return m;
}

/// The same matrix reduced modulo a prime.
inline Matrix<Residue> ell_matrix_mod(std::size_t n, const PrimeField& f) {
  if (n < 1 || n > kMaxModularEllN)
    throw PreconditionError("ell_matrix_mod: limited to 1 <= n <= " + std::to_string(kMaxModularEllN));
  const std::uint64_t N = 1ULL << n;
  std::vector<Residue> e(N + 1, f.zero());
  e[0] = f.one();
  for (std::uint64_t j = 0; j < N; ++j) {
    const auto v = f.from_int(static_cast<std::int64_t>(j));
    for (std::uint64_t k = j + 1; k >= 1; --k) e[k] = f.add(e[k], f.mul(v, e[k - 1]));
  }
  Matrix<Residue> m(N, N);
  for (std::uint64_t j = 0; j < N; ++j) {
    const auto jj = f.from_int(static_cast<std::int64_t>(j));
    m(0, j) = f.one();
    for (std::uint64_t k = 1; k < N; ++k) m(k, j) = f.sub(e[k], f.mul(jj, m(k - 1, j)));
  }
  return m;
}

enum class SignConvention { True, Printed };

/// P_n = Y^N + sum_k (beta_k + T L_k) Y^(N-k) mod T^2, N = 2^n, with
/// L_k = sum_j L(k-1, j) prod_i U_i^[j]_i.
struct FirstOrder {
  std::size_t n = 0;
  SignConvention convention = SignConvention::True;
  std::vector<Integer> beta;  // beta[k-1] = beta_k
  Matrix<Integer> L;          // row k-1 holds the coefficient vector of L_k
};

inline FirstOrder pn_first_order(std::size_t n, SignConvention convention = SignConvention::True) {
  FirstOrder fo{n, convention, {}, ell_matrix(n)};
  const std::uint64_t N = 1ULL << n;
  const auto e = elementary_symmetric_range(N);
  fo.beta.resize(N);
  for (std::uint64_t k = 1; k <= N; ++k) {
    const bool negate = convention == SignConvention::True && (k % 2 == 1);
    fo.beta[k - 1] = negate ? Integer(-e[k]) : e[k];
    if (negate)
      for (std::uint64_t j = 0; j < N; ++j) fo.L(k - 1, j) = -fo.L(k - 1, j);
  }
  return fo;
}

/// Monomial prod_i U_i^[j]_i over variables (T, U1..Un, Y).
inline Exponents hypercube_monomial(std::size_t n, std::uint64_t j, std::uint32_t t_exp, std::uint32_t y_exp) {
  Exponents e(n + 2, 0);
  e[0] = t_exp;
  for (std::size_t i = 1; i <= n; ++i) e[i] = hypercube_bit(j, i);
  e[n + 1] = y_exp;
  return e;
}

/// Y^N + sum_k (beta_k + T L_k) Y^(N-k) over (T, U1..Un, Y).
inline MultiPoly first_order_polynomial(const FirstOrder& fo) {
  auto vars = pn_parameters(fo.n);
  vars.push_back("Y");
  const std::uint64_t N = 1ULL << fo.n;
  MultiPoly p(vars);
  p.add_term(hypercube_monomial(fo.n, 0, 0, static_cast<std::uint32_t>(N)), Rational(1));
  for (std::uint64_t k = 1; k <= N; ++k) {
    const auto ye = static_cast<std::uint32_t>(N - k);
    p.add_term(hypercube_monomial(fo.n, 0, 0, ye), Rational(fo.beta[k - 1]));
    for (std::uint64_t j = 0; j < N; ++j) p.add_term(hypercube_monomial(fo.n, j, 1, ye), Rational(fo.L(k - 1, j)));
  }
  return p;
}

/// prod_j (Y - j - T m_j) reduced mod T^2 after every multiplication.
inline MultiPoly pn_mod_t2_expanded(std::size_t n) {
  if (n < 1 || n > 8) throw PreconditionError("pn_mod_t2_expanded: need 1 <= n <= 8");
  auto vars = pn_parameters(n);
  vars.push_back("Y");
  const std::uint64_t N = 1ULL << n;
  MultiPoly acc = MultiPoly::constant(Rational(1), vars);
  for (std::uint64_t j = 0; j < N; ++j) {
    MultiPoly f(vars);
    f.add_term(hypercube_monomial(n, 0, 0, 1), Rational(1));
    f.add_term(hypercube_monomial(n, 0, 0, 0), Rational(-static_cast<long>(j)));
    f.add_term(hypercube_monomial(n, j, 1, 0), Rational(-1));
    acc = (acc * f).truncate("T", 2);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// F_n = sum 2^(i-1) X_i + T prod (1 + (U_i - 1) X_i) on the hypercube G_i = X_i^2 - X_i

struct HypercubeFamily {
  std::size_t n = 0;
  Slp F;
  bool structured = false;  // true when F is F_n itself
};

namespace detail {
inline SlpBuilder::Ref build_fn(SlpBuilder& b, SlpBuilder::Ref t, const std::vector<SlpBuilder::Ref>& u,
                                const std::vector<SlpBuilder::Ref>& x) {
  const std::size_t n = x.size();
  const auto one = b.constant(Rational(1));
  SlpBuilder::Ref linear = x[0];
  for (std::size_t i = 2; i <= n; ++i) linear = b.add(linear, b.mul(b.constant(Rational(pow2(i - 1))), x[i - 1]));
  SlpBuilder::Ref prod = b.add(one, b.mul(b.sub(u[0], one), x[0]));
  for (std::size_t i = 2; i <= n; ++i) prod = b.mul(prod, b.add(one, b.mul(b.sub(u[i - 1], one), x[i - 1])));
  return b.add(linear, b.mul(t, prod));
}
}  // namespace detail

inline HypercubeFamily fn_slp(std::size_t n) {
  if (n < 1) throw PreconditionError("fn_slp: n must be positive");
  SlpBuilder b;
  const auto t = b.param("T");
  std::vector<SlpBuilder::Ref> u, x;
  for (std::size_t i = 1; i <= n; ++i) u.push_back(b.param(indexed("U", i)));
  for (std::size_t i = 1; i <= n; ++i) x.push_back(b.var(indexed("X", i)));
  b.output(detail::build_fn(b, t, u, x));
  return {n, b.build(), true};
}

/// Wraps an arbitrary program as a hypercube family (first-order mode unavailable).
inline HypercubeFamily hypercube_family(Slp F) {
  const std::size_t n = F.vars.size();
  if (n < 1) throw PreconditionError("hypercube_family: need at least one variable");
  if (F.outputs.empty()) throw PreconditionError("hypercube_family: program has no output");
  return {n, std::move(F), false};
}

inline std::vector<std::string> fn_variables(std::size_t n) {
  auto v = pn_parameters(n);
  for (std::size_t i = 1; i <= n; ++i) v.push_back(indexed("X", i));
  return v;
}

/// T prod_i (1 + (U_i - 1) X_i), expanded.
inline MultiPoly fn_product_part(std::size_t n) {
  const auto vars = fn_variables(n);
  MultiPoly acc = MultiPoly::variable("T", vars);
  for (std::size_t i = 1; i <= n; ++i) {
    const auto ui = MultiPoly::variable(indexed("U", i), vars);
    const auto xi = MultiPoly::variable(indexed("X", i), vars);
    const auto one = MultiPoly::constant(Rational(1), vars);
    acc = acc * (one + (ui - one) * xi);
  }
  return acc;
}

/// F_n expanded from its defining formula.
inline MultiPoly fn_closed_form(std::size_t n) {
  const auto vars = fn_variables(n);
  MultiPoly p = fn_product_part(n);
  for (std::size_t i = 1; i <= n; ++i) p = p + MultiPoly::variable(indexed("X", i), vars).scaled(Rational(pow2(i - 1)));
  return p;
}

/// j(eps) + t prod u_i^eps_i for eps in {0,1}^n.
inline Rational fn_hypercube_value(const Rational& t, const std::vector<Rational>& u, const std::vector<int>& eps) {
  Rational j(0), m(1);
  for (std::size_t i = 0; i < eps.size(); ++i)
    if (eps[i]) {
      j += Rational(pow2(i));
      m *= u.at(i);
    }
  return j + t * m;
}

/// The sparse chain G~_1..G~_{3n-1} and F~ = X_{2n-1} + T X_{3n-1}.
struct SparseSystem {
  std::size_t n = 0;
  std::vector<std::string> variables;  // T, U1..Un, X1..X_{3n-1}
  std::vector<MultiPoly> equations;
  MultiPoly F;

  /// Values of X1..X_{3n-1} determined by X1..Xn through the chain equations.
  std::vector<Rational> chain(const std::vector<Rational>& u, const std::vector<Rational>& x) const {
    if (u.size() != n || x.size() != n) throw PreconditionError("SparseSystem::chain: wrong input length");
    std::vector<Rational> X(3 * n);  // 1-based
    for (std::size_t i = 1; i <= n; ++i) X[i] = x[i - 1];
    X[n + 1] = Rational(2) * X[2] + X[1];
    for (std::size_t k = 2; k <= n - 1; ++k) X[n + k] = X[n + k - 1] + Rational(pow2(k)) * X[k + 1];
    X[2 * n] = u[0] * X[1] - X[1] + Rational(1);
    for (std::size_t k = 2; k <= n; ++k)
      X[2 * n + k - 1] = u[k - 1] * X[2 * n + k - 2] * X[k] - X[2 * n + k - 2] * X[k] + X[2 * n + k - 2];
    return {X.begin() + 1, X.end()};
  }

  /// F~ after running the chain.
  Rational value(const Rational& t, const std::vector<Rational>& u, const std::vector<Rational>& x) const {
    const auto X = chain(u, x);
    return X[2 * n - 2] + t * X[3 * n - 2];
  }
};

inline SparseSystem gtilde_system(std::size_t n) {
  if (n < 2) throw PreconditionError("gtilde_system: need n >= 2");
  SparseSystem s;
  s.n = n;
  s.variables = pn_parameters(n);
  for (std::size_t i = 1; i <= 3 * n - 1; ++i) s.variables.push_back(indexed("X", i));
  const auto& v = s.variables;
  auto X = [&](std::size_t i) { return MultiPoly::variable(indexed("X", i), v); };
  auto U = [&](std::size_t i) { return MultiPoly::variable(indexed("U", i), v); };
  auto c = [&](const Integer& k) { return MultiPoly::constant(Rational(k), v); };
  for (std::size_t i = 1; i <= n; ++i) s.equations.push_back(X(i) * X(i) - X(i));
  s.equations.push_back(X(n + 1) - c(2) * X(2) - X(1));
  for (std::size_t k = 2; k <= n - 1; ++k) s.equations.push_back(X(n + k) - X(n + k - 1) - c(pow2(k)) * X(k + 1));
  s.equations.push_back(X(2 * n) - U(1) * X(1) + X(1) - c(1));
  for (std::size_t k = 2; k <= n; ++k) {
    const auto prev = X(2 * n + k - 2);
    s.equations.push_back(X(2 * n + k - 1) - U(k) * prev * X(k) + prev * X(k) - prev);
  }
  s.F = X(2 * n - 1) + MultiPoly::variable("T", v) * X(3 * n - 1);
  return s;
}

/// R_n = Z * F_n with params Z, T, U1..Un and vars X1..Xn.
inline Slp rn_slp(std::size_t n) {
  if (n < 1) throw PreconditionError("rn_slp: n must be positive");
  SlpBuilder b;
  const auto z = b.param("Z");
  const auto t = b.param("T");
  std::vector<SlpBuilder::Ref> u, x;
  for (std::size_t i = 1; i <= n; ++i) u.push_back(b.param(indexed("U", i)));
  for (std::size_t i = 1; i <= n; ++i) x.push_back(b.var(indexed("X", i)));
  b.output(b.mul(z, detail::build_fn(b, t, u, x)));
  return b.build();
}

/// Z * F_n expanded (params Z, T, U1..Un, vars X1..Xn).
inline MultiPoly rn_closed_form(std::size_t n) {
  auto vars = fn_variables(n);
  vars.insert(vars.begin(), "Z");
  return (MultiPoly::variable("Z", vars) * fn_closed_form(n)).with_variables(vars);
}

// ---------------------------------------------------------------------------
// Existential formulas over R_n

enum class PhiVariant { Circuit, Sparse };

inline std::uint64_t phi_constraint_count(std::size_t n) { return 4 * n + 10; }

/// Integer entries in [-3n^3, 3n^3], entry (k, i) a pure function of (seed, n, k, i).
inline std::vector<std::vector<long>> sample_gamma_n(std::size_t n, std::uint64_t seed) {
  const long bound = 3L * static_cast<long>(n * n * n);
  std::vector<std::vector<long>> g(phi_constraint_count(n), std::vector<long>(n));
  for (std::size_t k = 0; k < g.size(); ++k)
    for (std::size_t i = 0; i < n; ++i)
      g[k][i] = static_cast<long>(uniform_at(seed, {0x9a77a, n, k, i}, static_cast<std::uint64_t>(2 * bound + 1))) - bound;
  return g;
}

struct PhiFormula {
  std::size_t n = 0;
  PhiVariant variant = PhiVariant::Circuit;
  std::uint64_t m = 0;
  std::uint64_t gamma_seed = 0;
  std::vector<std::vector<long>> gamma;
  std::size_t bound_variables = 0;
  std::string text;
  std::size_t length() const { return text.size(); }
};

namespace detail {
inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

inline std::string signed_term(long c) { return c < 0 ? "(" + std::to_string(c) + ")" : std::to_string(c); }

// Chain equations with X1..Xn replaced by `x` (names or integer literals) and
// X_{n+1}..X_{3n-1} renamed with `aux`; last conjunct is `lhs`=Z*X_{2n-1}+Z*T*X_{3n-1}.
inline std::vector<std::string> pi_chain(std::size_t n, const std::vector<std::string>& x,
                                         const std::function<std::string(std::size_t)>& aux, const std::string& lhs) {
  auto X = [&](std::size_t i) { return i <= n ? x[i - 1] : aux(i); };
  std::vector<std::string> eq;
  eq.push_back(X(n + 1) + "-2*" + X(2) + "-" + X(1) + "=0");
  for (std::size_t j = n + 2; j <= 2 * n - 1; ++j)
    eq.push_back(X(j) + "-" + X(j - 1) + "-2^" + std::to_string(j - n) + "*" + X(j - n + 1) + "=0");
  eq.push_back(X(2 * n) + "-U1*" + X(1) + "+" + X(1) + "-1=0");
  for (std::size_t k = 2 * n + 1; k <= 3 * n - 1; ++k) {
    const std::string a = X(k - 1), c = X(k - 2 * n + 1), u = indexed("U", k - 2 * n + 1);
    eq.push_back(X(k) + "-" + u + "*" + a + "*" + c + "+" + a + "*" + c + "-" + a + "=0");
  }
  eq.push_back(lhs + "=Z*" + X(2 * n - 1) + "+Z*T*" + X(3 * n - 1));
  return eq;
}
}  // namespace detail

/// Prenex existential formula in the free variables S1..Sm, Y.
///
/// Grammar: "E v1,...,vk:" prefix, then conjuncts joined by " & ". The
/// circuit variant writes S_k=R(Z,T,U1..Un;g_k1,...,g_kn) and appends
/// " where R(Z,T,U1..Un;X1..Xn):=" followed by the R_n program in the slp
/// text format with newlines replaced by ';'. The sparse variant replaces
/// every application of R by the chain equations with fresh bound variables
/// V<k>_<j> (k = application, j = n+1..3n-1); integers are decimal and
/// powers of two are written 2^e.
inline PhiFormula phi_formula(std::size_t n, PhiVariant variant, std::uint64_t gamma_seed = 0) {
  if (n < 2) throw PreconditionError("phi_formula: need n >= 2");
  PhiFormula f;
  f.n = n;
  f.variant = variant;
  f.m = phi_constraint_count(n);
  f.gamma_seed = gamma_seed;
  f.gamma = sample_gamma_n(n, gamma_seed);

  std::vector<std::string> xs, us;
  for (std::size_t i = 1; i <= n; ++i) xs.push_back(indexed("X", i));
  for (std::size_t i = 1; i <= n; ++i) us.push_back(indexed("U", i));
  std::vector<std::string> bound = xs;
  bound.push_back("Z");
  bound.push_back("T");
  bound.insert(bound.end(), us.begin(), us.end());

  std::vector<std::string> conj;
  for (const auto& x : xs) conj.push_back(x + "^2-" + x + "=0");
  const std::string head = "Z,T," + detail::join(us, ",");
  if (variant == PhiVariant::Circuit) {
    for (std::size_t k = 0; k < f.m; ++k) {
      std::vector<std::string> g;
      for (long v : f.gamma[k]) g.push_back(std::to_string(v));
      conj.push_back(indexed("S", k + 1) + "=R(" + head + ";" + detail::join(g, ",") + ")");
    }
    conj.push_back("Y=R(" + head + ";" + detail::join(xs, ",") + ")");
  } else {
    for (std::size_t k = 0; k <= f.m; ++k) {
      const bool last = k == f.m;
      std::vector<std::string> x;
      if (last) x = xs;
      else
        for (long v : f.gamma[k]) x.push_back(detail::signed_term(v));
      auto aux = [k](std::size_t j) { return "V" + std::to_string(k + 1) + "_" + std::to_string(j); };
      for (std::size_t j = n + 1; j <= 3 * n - 1; ++j) bound.push_back(aux(j));
      auto eqs = detail::pi_chain(n, x, aux, last ? "Y" : indexed("S", k + 1));
      conj.insert(conj.end(), eqs.begin(), eqs.end());
    }
  }
  f.bound_variables = bound.size();
  std::string text = "E " + detail::join(bound, ",") + ": " + detail::join(conj, " & ");
  if (variant == PhiVariant::Circuit) {
    std::string prog = serialize_slp(rn_slp(n));
    for (auto& ch : prog)
      if (ch == '\n') ch = ';';
    if (!prog.empty() && prog.back() == ';') prog.pop_back();
    text += " where R(" + head + ";" + detail::join(xs, ",") + "):=" + prog;
  }
  f.text = std::move(text);
  return f;
}

}  // namespace elimkit
