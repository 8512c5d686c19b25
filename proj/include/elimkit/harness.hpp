#pragma once

// Elimination over the hypercube, rank certificates and probes.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "elimkit/errors.hpp"
#include "elimkit/families.hpp"
#include "elimkit/linalg.hpp"
#include "elimkit/primes.hpp"
#include "elimkit/random.hpp"
#include "elimkit/rings.hpp"
#include "elimkit/univariate.hpp"

namespace elimkit {

/// Fixed 62-bit prime (the largest below 2^62) for modular certificates.
inline constexpr std::uint64_t kCertificatePrime = 4611686018427387847ULL;

// ---------------------------------------------------------------------------
// Elimination

/// prod over eps in {0,1}^n of (Y - F(params, eps)), by evaluating F at every vertex.
inline MultiPoly eliminate_hypercube(const HypercubeFamily& fam, const std::vector<Rational>& params,
                                     std::optional<std::size_t> budget = std::nullopt) {
  const std::size_t n = fam.n;
  if (n < 1 || n > 20) throw PreconditionError("eliminate_hypercube: need 1 <= n <= 20");
  if (params.size() != fam.F.params.size())
    throw PreconditionError("eliminate_hypercube: expected " + std::to_string(fam.F.params.size()) + " parameter values");
  const std::uint64_t N = 1ULL << n;
  if (N + 1 > budget.value_or(default_term_budget())) throw BudgetExceeded("expansion too large", N + 1);
  const RationalField q;
  std::vector<Rational> roots;
  roots.reserve(N);
  std::vector<Rational> x(n);
  for (std::uint64_t j = 0; j < N; ++j) {
    for (std::size_t i = 1; i <= n; ++i) x[i - 1] = Rational(static_cast<long>(hypercube_bit(j, i)));
    roots.push_back(evaluate(fam.F, q, std::span<const Rational>(params), std::span<const Rational>(x)).at(0));
  }
  return dense_to_multipoly(product_of_linear_factors(roots), "Y");
}

/// Specialized mode with (t, u); a family without parameters ignores them.
inline MultiPoly eliminate_hypercube(const HypercubeFamily& fam, const Rational& t, const std::vector<Rational>& u,
                                     std::optional<std::size_t> budget = std::nullopt) {
  std::vector<Rational> params;
  if (!fam.F.params.empty()) {
    params.push_back(t);
    params.insert(params.end(), u.begin(), u.end());
  }
  return eliminate_hypercube(fam, params, budget);
}

/// First-order mode: the mod T^2 data, available for the structured family only.
inline FirstOrder eliminate_hypercube_first_order(const HypercubeFamily& fam,
                                                  SignConvention convention = SignConvention::True) {
  if (!fam.structured) throw PreconditionError("first-order elimination needs the structured family F_n");
  if (fam.n > kMaxExactEllN) throw PreconditionError("first-order elimination limited to n <= " + std::to_string(kMaxExactEllN));
  return pn_first_order(fam.n, convention);
}

struct SeparabilityResult {
  bool separable = false;
  MultiPoly gcd_with_derivative;
};

inline SeparabilityResult separability_check(const MultiPoly& p) {
  if (p.is_zero()) throw PreconditionError("separability_check: zero polynomial");
  auto g = uni_gcd(p, uni_derivative(p));
  const bool sep = g.is_constant();
  return {sep, std::move(g)};
}

// ---------------------------------------------------------------------------
// Rank certificates

enum class FieldKind { Rationals, Prime };

struct RankCertificate {
  std::string description;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t rank = 0;
  FieldKind field = FieldKind::Rationals;
  std::uint64_t modulus = 0;  // for FieldKind::Prime
  std::vector<Pivot> pivots;  // pivot rows/cols of a nonsingular rank x rank minor
  std::optional<std::uint64_t> seed;
  std::vector<std::vector<Rational>> points;
  std::vector<std::string> notes;

  std::size_t side() const { return std::min(rows, cols); }
  bool full() const { return rank == side(); }
  std::string field_name() const { return field == FieldKind::Rationals ? "Q" : "F_" + std::to_string(modulus); }
};

namespace detail {
inline std::pair<std::vector<std::size_t>, std::vector<std::size_t>> pivot_lines(const std::vector<Pivot>& pivots) {
  std::vector<std::size_t> r, c;
  for (const auto& p : pivots) {
    r.push_back(p.row);
    c.push_back(p.col);
  }
  return {r, c};
}

inline void check_pivot_bounds(const RankCertificate& cert, std::size_t rows, std::size_t cols) {
  if (rows != cert.rows || cols != cert.cols) throw PreconditionError("verify: matrix shape differs from certificate");
  std::set<std::size_t> rs, cs;
  for (const auto& p : cert.pivots) {
    if (p.row >= rows || p.col >= cols) throw PreconditionError("verify: pivot outside the matrix");
    rs.insert(p.row);
    cs.insert(p.col);
  }
  if (rs.size() != cert.pivots.size() || cs.size() != cert.pivots.size())
    throw PreconditionError("verify: repeated pivot line");
}
}  // namespace detail

/// Re-verifies a certificate: the pivot minor is nonsingular and its size is the claimed rank.
inline bool verify_certificate(const RankCertificate& cert, const Matrix<Integer>& m) {
  if (cert.field != FieldKind::Rationals) throw PreconditionError("verify: certificate is not over Q");
  detail::check_pivot_bounds(cert, m.rows(), m.cols());
  if (cert.pivots.size() != cert.rank) return false;
  auto [r, c] = detail::pivot_lines(cert.pivots);
  return bareiss_rank(m.submatrix(r, c)).rank == cert.rank;
}

inline bool verify_certificate(const RankCertificate& cert, const Matrix<Residue>& m) {
  if (cert.field != FieldKind::Prime) throw PreconditionError("verify: certificate is not over a prime field");
  detail::check_pivot_bounds(cert, m.rows(), m.cols());
  if (cert.pivots.size() != cert.rank) return false;
  auto [r, c] = detail::pivot_lines(cert.pivots);
  return field_rank(PrimeField(cert.modulus), m.submatrix(r, c)).rank == cert.rank;
}

inline constexpr std::size_t kMaxRationalRankN = 6;
inline constexpr std::size_t kMaxModularRankN = 10;

namespace detail {
inline void check_rank_limits(std::size_t n, FieldKind field) {
  const std::size_t limit = field == FieldKind::Rationals ? kMaxRationalRankN : kMaxModularRankN;
  if (n < 1 || n > limit)
    throw PreconditionError("rank size limit: n must be in [1, " + std::to_string(limit) + "] over " +
                            (field == FieldKind::Rationals ? "Q" : "F_p"));
}

inline void note_modular(RankCertificate& c) {
  c.notes.push_back(c.full() ? "full rank mod p implies full rank over Q (certified over Q)"
                             : "rank deficient mod p: inconclusive over Q, escalate to exact elimination");
}
}  // namespace detail

/// Rank of the ell-matrix: 2^n means L_1..L_{2^n} are linearly independent.
inline RankCertificate independence_rank(std::size_t n, FieldKind field = FieldKind::Rationals,
                                         std::uint64_t prime = kCertificatePrime) {
  detail::check_rank_limits(n, field);
  RankCertificate c;
  c.description = "ell-matrix (l_{k,j}) for n=" + std::to_string(n);
  c.rows = c.cols = std::size_t{1} << n;
  c.field = field;
  if (field == FieldKind::Rationals) {
    auto r = bareiss_rank(ell_matrix(n));
    c.rank = r.rank;
    c.pivots = std::move(r.pivots);
  } else {
    const PrimeField f(prime);
    auto r = field_rank(f, ell_matrix_mod(n, f));
    c.modulus = prime;
    c.rank = r.rank;
    c.pivots = std::move(r.pivots);
    detail::note_modular(c);
  }
  return c;
}

/// Monomial values prod_i u_i^[j]_i for j = 0..2^n-1.
template <EvaluationRing R>
std::vector<typename R::Element> hypercube_monomials(const R& ring, const std::vector<typename R::Element>& u) {
  const std::size_t n = u.size();
  std::vector<typename R::Element> mono(std::size_t{1} << n, ring.one());
  for (std::uint64_t j = 1; j < mono.size(); ++j) {
    const auto top = static_cast<std::size_t>(std::bit_width(j));
    mono[j] = ring.mul(mono[j & ~(1ULL << (top - 1))], u[top - 1]);
  }
  return mono;
}

/// Matrix (L_i(u_j)) over Q: rows i = 1..2^n, columns = points.
inline Matrix<Integer> lk_matrix(std::size_t n, const std::vector<std::vector<Rational>>& points,
                                 SignConvention convention = SignConvention::True) {
  const auto fo = pn_first_order(n, convention);
  const std::size_t N = std::size_t{1} << n;
  Matrix<Rational> mon(N, points.size());
  const RationalField q;
  for (std::size_t j = 0; j < points.size(); ++j) {
    auto m = hypercube_monomials(q, points[j]);
    for (std::size_t k = 0; k < N; ++k) mon(k, j) = m[k];
  }
  Matrix<Rational> out(N, points.size());
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < points.size(); ++j) {
      Rational s(0);
      for (std::size_t k = 0; k < N; ++k)
        if (fo.L(i, k) != 0) s += Rational(fo.L(i, k)) * mon(k, j);
      out(i, j) = s;
    }
  return clear_denominators(out);
}

inline Matrix<Residue> lk_matrix_mod(std::size_t n, const std::vector<std::vector<Rational>>& points,
                                     const PrimeField& f, SignConvention convention = SignConvention::True) {
  const auto ell = ell_matrix_mod(n, f);
  const std::size_t N = std::size_t{1} << n;
  Matrix<Residue> mon(N, points.size());
  for (std::size_t j = 0; j < points.size(); ++j) {
    std::vector<Residue> u;
    for (const auto& x : points[j]) u.push_back(f.from_rational(x));
    auto m = hypercube_monomials(f, u);
    for (std::size_t k = 0; k < N; ++k) mon(k, j) = m[k];
  }
  Matrix<Residue> out(N, points.size());
  for (std::size_t i = 0; i < N; ++i) {
    const bool negate = convention == SignConvention::True && ((i + 1) % 2 == 1);
    for (std::size_t j = 0; j < points.size(); ++j) {
      unsigned __int128 acc = 0;
      for (std::size_t k = 0; k < N; ++k) {
        acc += static_cast<unsigned __int128>(ell(i, k).v) * mon(k, j).v;
        if ((k & 7) == 7) acc %= f.modulus();
      }
      Residue r{static_cast<std::uint64_t>(acc % f.modulus())};
      out(i, j) = negate ? f.neg(r) : r;
    }
  }
  return out;
}

/// Random integer points in {-2^n, ..., 2^n}^n, a pure function of the seed.
inline std::vector<std::vector<Rational>> random_hypercube_points(std::size_t n, std::uint64_t seed) {
  CounterRng rng(seed, 0x1c);
  const std::int64_t b = std::int64_t{1} << n;
  std::vector<std::vector<Rational>> pts(std::size_t{1} << n, std::vector<Rational>(n));
  for (auto& p : pts)
    for (auto& x : p) x = Rational(static_cast<long>(rng.range(-b, b)));
  return pts;
}

struct LkAttempt {
  std::uint64_t seed;
  std::size_t rank;
};

struct LkRankResult {
  RankCertificate certificate;
  std::vector<LkAttempt> attempts;
};

inline constexpr int kMaxLkRetries = 5;

inline RankCertificate lk_rank_at(std::size_t n, const std::vector<std::vector<Rational>>& points, FieldKind field,
                                  SignConvention convention = SignConvention::True,
                                  std::uint64_t prime = kCertificatePrime) {
  detail::check_rank_limits(n, field);
  const std::size_t N = std::size_t{1} << n;
  if (points.size() != N) throw PreconditionError("lk rank: need exactly 2^n points");
  for (const auto& p : points)
    if (p.size() != n) throw PreconditionError("lk rank: points must have n coordinates");
  RankCertificate c;
  c.description = std::string("matrix (L_i(u_j)) for n=") + std::to_string(n) +
                  (convention == SignConvention::True ? "" : ", unsigned variant");
  c.rows = c.cols = N;
  c.field = field;
  c.points = points;
  if (field == FieldKind::Rationals) {
    auto r = bareiss_rank(lk_matrix(n, points, convention));
    c.rank = r.rank;
    c.pivots = std::move(r.pivots);
  } else {
    const PrimeField f(prime);
    auto r = field_rank(f, lk_matrix_mod(n, points, f, convention));
    c.modulus = prime;
    c.rank = r.rank;
    c.pivots = std::move(r.pivots);
    detail::note_modular(c);
  }
  return c;
}

/// Seeded random points with up to kMaxLkRetries fresh draws after a rank-deficient one.
inline LkRankResult lk_at_points_rank(std::size_t n, std::uint64_t seed, FieldKind field = FieldKind::Rationals,
                                      SignConvention convention = SignConvention::True,
                                      std::uint64_t prime = kCertificatePrime) {
  LkRankResult out;
  for (int attempt = 0; attempt <= kMaxLkRetries; ++attempt) {
    const std::uint64_t s = attempt == 0 ? seed : derive(seed, {0x7e7, static_cast<std::uint64_t>(attempt)});
    auto cert = lk_rank_at(n, random_hypercube_points(n, s), field, convention, prime);
    cert.seed = s;
    out.attempts.push_back({s, cert.rank});
    if (cert.full()) {
      if (attempt > 0) cert.notes.push_back("full rank after " + std::to_string(attempt) + " retries");
      out.certificate = std::move(cert);
      return out;
    }
  }
  throw Error("no full-rank points found in " + std::to_string(kMaxLkRetries) + " retries");
}

/// Matrix (d * zeta^(k j)), 0 <= k < d, -1 <= j < d, over F_p.
inline Matrix<Residue> tangent_matrix(std::uint64_t d, const PrimeField& f, Residue zeta) {
  Matrix<Residue> a(d, d + 1);
  const auto dd = f.from_int(static_cast<std::int64_t>(d));
  const auto zinv = f.inv(zeta);
  for (std::uint64_t k = 0; k < d; ++k) {
    a(k, 0) = f.mul(dd, ring_pow(f, zinv, k));
    const auto zk = ring_pow(f, zeta, k);
    auto v = dd;
    for (std::uint64_t j = 0; j < d; ++j) {
      a(k, j + 1) = v;
      v = f.mul(v, zk);
    }
  }
  return a;
}

/// Rank of the tangent matrix of omega_d at a root of unity, transported to F_p.
inline RankCertificate tangent_rank_paradigm1(std::uint64_t d, std::uint64_t p) {
  if (d < 1 || d > 64) throw PreconditionError("tangent_rank: need 1 <= d <= 64");
  if (p < 2 || !is_prime(p)) throw PreconditionError("tangent_rank: p must be prime");
  if (d % p == 0) throw PreconditionError("tangent_rank: p divides d");
  if ((p - 1) % d != 0) throw PreconditionError("no such root: d does not divide p-1");
  const PrimeField f(p);
  const auto zeta = find_primitive_root(f, d);
  const auto a = tangent_matrix(d, f, zeta);
  RankCertificate c;
  c.description = "tangent matrix (d*zeta^(kj)) for d=" + std::to_string(d) + ", zeta=" + std::to_string(zeta.v) +
                  " (finite-field transport)";
  c.rows = d;
  c.cols = d + 1;
  c.field = FieldKind::Prime;
  c.modulus = p;
  c.rank = field_rank(f, a).rank;
  std::vector<std::size_t> rows(d), cols(d);
  for (std::uint64_t k = 0; k < d; ++k) {
    rows[k] = k;
    cols[k] = k + 1;
  }
  if (field_rank(f, a.submatrix(rows, cols)).rank == d)
    for (std::uint64_t k = 0; k < d; ++k) c.pivots.push_back({k, k + 1});
  else
    c.pivots = field_rank(f, a).pivots;
  c.notes.push_back("witness: Vandermonde minor on the last d columns");
  return c;
}

struct BlowupReport {
  std::size_t n = 0;
  std::uint64_t independent_directions = 0;
  std::uint64_t certified_lower_bound = 0;  // 0 when a certificate is not full
  RankCertificate independence;
  LkRankResult lk;
};

inline BlowupReport blowup_report(std::size_t n, std::uint64_t seed = 0) {
  const FieldKind field = n <= kMaxRationalRankN ? FieldKind::Rationals : FieldKind::Prime;
  BlowupReport r;
  r.n = n;
  r.independent_directions = std::uint64_t{1} << n;
  r.independence = independence_rank(n, field);
  r.lk = lk_at_points_rank(n, seed, field);
  r.certified_lower_bound = r.independence.full() && r.lk.certificate.full() ? r.independent_directions : 0;
  return r;
}

// ---------------------------------------------------------------------------
// Robustness and distinctness probes

struct Paradigm1Probe {
  std::uint64_t d = 0, p = 0;
  std::vector<std::uint64_t> fiber;  // u in F_p with omega_d(u) = 0
  bool ok = false;
};

inline constexpr std::uint64_t kMaxEnumeratedField = 1ULL << 24;

inline Paradigm1Probe robustness_probe_paradigm1(std::uint64_t d, std::uint64_t p) {
  if (p < 2 || !is_prime(p)) throw PreconditionError("robustness probe: p must be prime");
  if (d < 1 || (p - 1) % d != 0) throw PreconditionError("robustness probe: d must divide p-1");
  if (p > kMaxEnumeratedField) throw PreconditionError("robustness probe: field too large to enumerate");
  const PrimeField f(p);
  Paradigm1Probe r{d, p, {}, false};
  for (std::uint64_t u = 0; u < p; ++u) {
    auto w = omega_d(f, d, Residue{u});
    if (std::all_of(w.begin(), w.end(), [&](Residue x) { return f.is_zero(x); })) r.fiber.push_back(u);
  }
  r.ok = r.fiber.size() == d;
  return r;
}

struct Paradigm2Probe {
  std::size_t n = 0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  bool slice_constant = false;       // t = 0: same polynomial for every sampled u
  bool varies_with_t = false;        // t = 1: at least two sampled u give different polynomials
  std::string slice_polynomial;      // the t = 0 polynomial
  std::size_t distinct_at_t1 = 0;    // number of distinct polynomials seen at t = 1
};

inline Paradigm2Probe robustness_probe_paradigm2(std::size_t n, std::size_t samples, std::uint64_t seed) {
  if (n < 1 || n > 10) throw PreconditionError("robustness probe: need 1 <= n <= 10");
  Paradigm2Probe r{n, samples, seed, true, false, "", 0};
  CounterRng rng(seed, 0x2b);
  std::vector<std::vector<Rational>> us(samples, std::vector<Rational>(n));
  for (auto& u : us)
    for (auto& x : u) x = rng.rational(9, 4);
  std::optional<MultiPoly> first;
  std::vector<MultiPoly> at_t1;
  for (const auto& u : us) {
    auto p0 = pn_specialized(n, Rational(0), u);
    if (!first) first = p0;
    else if (!(p0 == *first)) r.slice_constant = false;
    auto p1 = pn_specialized(n, Rational(1), u);
    if (std::none_of(at_t1.begin(), at_t1.end(), [&](const MultiPoly& q) { return q == p1; })) at_t1.push_back(p1);
  }
  if (first) r.slice_polynomial = first->str();
  r.distinct_at_t1 = at_t1.size();
  r.varies_with_t = at_t1.size() >= 2;
  return r;
}

struct DistinctnessCounterexample {
  std::vector<Rational> a, b;  // (z, t, u_1..u_n)
};

struct DistinctnessReport {
  std::size_t n = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  std::size_t distinct_pairs = 0;
  std::size_t equal_pairs = 0;
  std::vector<DistinctnessCounterexample> counterexamples;
};

/// Random parameter pairs whose R_n polynomials differ must have different value vectors on gamma_n.
inline DistinctnessReport distinctness_probe_gamma_n(std::size_t n, std::size_t trials, std::uint64_t seed) {
  if (n < 2 || n > 8) throw PreconditionError("distinctness probe: need 2 <= n <= 8");
  DistinctnessReport r{n, trials, seed, 0, 0, {}};
  if (trials == 0) return r;
  const auto gamma = sample_gamma_n(n, seed);
  const Slp R = rn_slp(n);
  const MultiPoly closed = rn_closed_form(n);
  std::vector<std::string> pnames{"Z", "T"};
  for (std::size_t i = 1; i <= n; ++i) pnames.push_back(indexed("U", i));
  CounterRng rng(seed, 0xd15);
  const RationalField q;
  auto draw = [&] {
    std::vector<Rational> v;
    for (std::size_t i = 0; i < n + 2; ++i) v.push_back(Rational(static_cast<long>(rng.range(-2, 2))));
    return v;
  };
  auto specialize = [&](const std::vector<Rational>& v) {
    std::map<std::string, Rational> at;
    for (std::size_t i = 0; i < pnames.size(); ++i) at[pnames[i]] = v[i];
    return closed.substitute(at);
  };
  auto values = [&](const std::vector<Rational>& v) {
    std::vector<Rational> out;
    for (const auto& g : gamma) {
      std::vector<Rational> xv;
      for (long c : g) xv.push_back(Rational(c));
      out.push_back(evaluate(R, q, std::span<const Rational>(v), std::span<const Rational>(xv)).at(0));
    }
    return out;
  };
  for (std::size_t k = 0; k < trials; ++k) {
    const auto a = draw(), b = draw();
    if (specialize(a) == specialize(b)) {
      ++r.equal_pairs;
      continue;
    }
    ++r.distinct_pairs;
    if (values(a) == values(b)) r.counterexamples.push_back({a, b});
  }
  return r;
}

}  // namespace elimkit
