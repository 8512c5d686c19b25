#pragma once

// The twelve acceptance criteria as executable checks.

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "elimkit/bounds.hpp"
#include "elimkit/expand.hpp"
#include "elimkit/families.hpp"
#include "elimkit/harness.hpp"
#include "elimkit/json_io.hpp"
#include "elimkit/primes.hpp"
#include "elimkit/sequences.hpp"
#include "elimkit/slp_random.hpp"
#include "elimkit/value_encoding.hpp"

namespace elimkit {

struct ReproduceOptions {
  std::uint64_t seed = 0;
  std::size_t max_n = 20;  // caps every n-range below its documented end
  std::function<void(const std::string&)> progress;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  Json details;
  double seconds = 0;
};

namespace detail {

inline std::size_t cap(std::size_t hi, const ReproduceOptions& o) { return std::min(hi, o.max_n); }

inline Json criterion_independence(const ReproduceOptions& o, bool& ok) {
  Json rows = Json::array();
  ok = true;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t n = 1; n <= cap(10, o); ++n) {
    const FieldKind f = n <= 6 ? FieldKind::Rationals : FieldKind::Prime;
    const auto c = independence_rank(n, f);
    const bool good = c.rank == (std::size_t{1} << n);
    ok = ok && good;
    rows.push_back(Json{{"n", n}, {"field", c.field_name()}, {"rank", c.rank}, {"expected", std::size_t{1} << n}});
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ok = ok && secs < 120.0;
  return Json{{"ranks", rows}, {"within_time_limit", secs < 120.0}};
}

inline Json criterion_first_order(const ReproduceOptions& o, bool& ok) {
  Json rows = Json::array();
  ok = true;
  for (std::size_t n = 1; n <= cap(4, o); ++n) {
    // Oracle: the program for P_n expanded in full, then reduced mod T^2.
    const MultiPoly full = expand(pn_slp(n)).truncate("T", 2);
    const MultiPoly oracle = full.with_variables(MultiPoly::merge_variables(pn_parameters(n), {"Y"}));
    const MultiPoly signed_poly = first_order_polynomial(pn_first_order(n, SignConvention::True));
    const MultiPoly printed_poly = first_order_polynomial(pn_first_order(n, SignConvention::Printed));
    const bool signed_ok = signed_poly == oracle;
    // The unsigned variant must disagree in every odd-k coefficient and agree in every even-k one.
    const std::uint32_t N = 1U << n;
    bool odd_fail = true, even_match = true;
    for (std::uint32_t k = 1; k <= N; ++k) {
      auto coeff = [&](const MultiPoly& p) {
        MultiPoly c(p.variables());
        const auto y = *p.index_of("Y");
        for (const auto& [e, v] : p.terms())
          if (e[y] == N - k) c.add_term(e, v);
        return c;
      };
      const bool same = coeff(printed_poly) == coeff(oracle);
      if (k % 2 == 1 && same) odd_fail = false;
      if (k % 2 == 0 && !same) even_match = false;
    }
    ok = ok && signed_ok && odd_fail && even_match;
    rows.push_back(Json{{"n", n},
                        {"oracle_terms", oracle.size()},
                        {"signed_matches", signed_ok},
                        {"unsigned_fails_odd_k", odd_fail},
                        {"unsigned_matches_even_k", even_match}});
  }
  return Json{{"rows", rows}};
}

inline Json criterion_blowup(const ReproduceOptions& o, bool& ok) {
  Json rows = Json::array();
  ok = true;
  for (std::size_t n = 1; n <= cap(6, o); ++n) {
    const auto r = blowup_report(n, derive(o.seed, {3, n}));
    const bool reverified = verify_certificate(r.independence, ell_matrix(n)) &&
                            verify_certificate(r.lk.certificate, lk_matrix(n, r.lk.certificate.points));
    const bool good = r.certified_lower_bound == (std::uint64_t{1} << n) && reverified;
    ok = ok && good;
    rows.push_back(Json{{"n", n},
                        {"certified_lower_bound", r.certified_lower_bound},
                        {"independence_rank", r.independence.rank},
                        {"lk_rank", r.lk.certificate.rank},
                        {"lk_attempts", r.lk.attempts.size()},
                        {"witnesses_reverified", reverified}});
  }
  return Json{{"rows", rows}};
}

inline Json criterion_circuit_sizes(const ReproduceOptions& o, bool& ok) {
  Json rows = Json::array();
  ok = true;
  for (std::size_t n = 1; n <= cap(20, o); ++n) {
    const auto pf = profile(fn_slp(n).F);
    const auto pr = profile(rn_slp(n));
    const bool good = pf.size_over_params == n - 1 && pr.total_ops <= 12 * n + 8;
    ok = ok && good;
    rows.push_back(Json{{"n", n}, {"fn_L_over_params", pf.size_over_params}, {"rn_total_ops", pr.total_ops},
                        {"rn_ops_limit", 12 * n + 8}});
  }
  return Json{{"rows", rows}};
}

inline Json criterion_sparsity(const ReproduceOptions& o, bool& ok) {
  Json rows = Json::array();
  ok = true;
  for (std::size_t n = 1; n <= cap(10, o); ++n) {
    const MultiPoly e = expand(fn_slp(n).F);
    std::vector<std::string> xs;
    for (std::size_t i = 1; i <= n; ++i) xs.push_back(indexed("X", i));
    const std::size_t x_terms = count_terms(e, &xs);
    Json row{{"n", n}, {"x_restricted_terms", x_terms}, {"full_terms", e.size()}};
    bool good = x_terms == (std::size_t{1} << n);
    if (n <= 8) {
      const std::size_t prod = count_terms(fn_product_part(n));
      const std::size_t expect = static_cast<std::size_t>(std::pow(3.0, static_cast<double>(n)) + 0.5);
      row["product_part_terms"] = prod;
      good = good && prod == expect;
    }
    ok = ok && good;
    rows.push_back(row);
  }
  return Json{{"rows", rows}};
}

inline Json criterion_sequences(const ReproduceOptions& o, bool& ok) {
  const auto t0 = std::chrono::steady_clock::now();
  ok = true;
  bool formulas = true;
  for (std::uint64_t L = 1; L <= 6; ++L)
    for (std::uint64_t t = 1; t <= 3; ++t) {
      ClassSpec s;
      s.L = L;
      s.t = t;
      formulas = formulas && required_length(s, SequenceKind::CorrectTest) == 2 * L + 2 &&
                 required_length(s, SequenceKind::Identification) == 4 * L + 2 &&
                 required_length(s, SequenceKind::CircuitClass) == 4 * (L + t + 1) * (L + t + 1) + 2 &&
                 required_set_size(s, SequenceKind::CircuitClass) == pow2(4 * (L + 1));
    }
  ClassSpec spot;
  spot.L = 2;
  spot.t = 1;
  const auto m_spot = required_length(spot, SequenceKind::CircuitClass);
  const auto M_spot = required_set_size(spot, SequenceKind::CircuitClass);
  const bool spot_ok = m_spot == 66 && M_spot == 4096;

  ClassSpec id_spec;
  id_spec.L = 2;
  id_spec.t = 1;
  id_spec.Delta = 1;
  const auto cls = affine_class(-2, 2);
  const std::size_t trials = 500;
  std::size_t successes = 0;
  for (std::size_t k = 0; k < trials; ++k) {
    const auto gamma = sample_sequence(id_spec, SequenceKind::Identification, derive(o.seed, {6, k}));
    if (is_identification_sequence(gamma, cls).ok) ++successes;
  }
  const double frac = static_cast<double>(successes) / static_cast<double>(trials);
  const auto M_id = required_set_size(id_spec, SequenceKind::Identification);
  const auto m_id = required_length(id_spec, SequenceKind::Identification);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ok = formulas && spot_ok && M_id == 2 && m_id == 10 && frac >= 0.45 && secs < 30.0;
  return Json{{"formulas_match", formulas},
              {"spot", Json{{"m", m_spot}, {"M", M_spot.get_str()}}},
              {"identification_M", M_id.get_str()},
              {"identification_m", m_id},
              {"trials", trials},
              {"successes", successes},
              {"success_fraction", frac},
              {"threshold", 0.45},
              {"within_time_limit", secs < 30.0}};
}

inline Json criterion_elimination(const ReproduceOptions& o, bool& ok) {
  Json rows = Json::array();
  ok = true;
  for (std::size_t n = 1; n <= cap(10, o); ++n) {
    const auto fam = fn_slp(n);
    CounterRng rng(derive(o.seed, {7, n}));
    std::size_t agree = 0;
    for (int s = 0; s < 20; ++s) {
      const Rational t = rng.rational(5, 5);
      std::vector<Rational> u(n);
      for (auto& x : u) x = rng.rational(5, 5);
      if (eliminate_hypercube(fam, t, u) == pn_specialized(n, t, u)) ++agree;
    }
    ok = ok && agree == 20;
    rows.push_back(Json{{"n", n}, {"agreements", agree}, {"samples", 20}});
  }
  const auto spot = eliminate_hypercube(fn_slp(2), Rational(0), {Rational(3), Rational(5)}).str();
  const bool spot_ok = spot == "Y^4 - 6*Y^3 + 11*Y^2 - 6*Y";
  ok = ok && spot_ok;
  return Json{{"rows", rows}, {"n2_t0", spot}, {"n2_t0_matches", spot_ok}};
}

inline Json criterion_robustness(const ReproduceOptions& o, bool& ok) {
  ok = true;
  Json p1 = Json::array();
  for (std::uint64_t d = 2; d <= 12; ++d) {
    const auto p = least_prime_congruent_one(d, 100);
    const auto r = robustness_probe_paradigm1(d, p);
    ok = ok && r.ok;
    p1.push_back(Json{{"d", d}, {"p", p}, {"fiber_size", r.fiber.size()}});
  }
  Json p2 = Json::array();
  for (std::size_t n = 1; n <= cap(8, o); ++n) {
    const auto r = robustness_probe_paradigm2(n, 20, derive(o.seed, {8, n}));
    ok = ok && r.slice_constant && r.varies_with_t;
    p2.push_back(Json{{"n", n}, {"t0_constant", r.slice_constant}, {"t1_distinct", r.distinct_at_t1}});
  }
  return Json{{"paradigm1", p1}, {"paradigm2", p2}};
}

inline Json criterion_tangent(const ReproduceOptions&, bool& ok) {
  const auto t0 = std::chrono::steady_clock::now();
  ok = true;
  Json rows = Json::array();
  for (std::uint64_t d = 1; d <= 32; ++d) {
    const auto p = least_prime_congruent_one(d, 1ULL << 16);
    const auto c = tangent_rank_paradigm1(d, p);
    ok = ok && c.rank == d;
    rows.push_back(Json{{"d", d}, {"p", p}, {"rank", c.rank}});
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  ok = ok && secs < 10.0;
  return Json{{"rows", rows}, {"within_time_limit", secs < 10.0}};
}

inline Json criterion_formula_growth(const ReproduceOptions& o, bool& ok) {
  ok = true;
  bool m_ok = true, gamma_ok = true, bound_ok = true;
  for (std::size_t n = 2; n <= 20; ++n) {
    m_ok = m_ok && phi_constraint_count(n) == 4 * n + 10;
    const long b = 3L * static_cast<long>(n * n * n);
    for (const auto& row : sample_gamma_n(n, o.seed))
      for (long v : row) gamma_ok = gamma_ok && v >= -b && v <= b;
  }
  Json rows = Json::array();
  bool ratio_ok = true;
  for (std::size_t n = 4; n <= cap(10, o); ++n) {
    const auto a = phi_formula(n, PhiVariant::Circuit, o.seed);
    const auto b = phi_formula(2 * n, PhiVariant::Circuit, o.seed);
    const auto sa = phi_formula(n, PhiVariant::Sparse, o.seed);
    const auto sb = phi_formula(2 * n, PhiVariant::Sparse, o.seed);
    const double ratio = static_cast<double>(b.length()) / static_cast<double>(a.length());
    const double sratio = static_cast<double>(sb.length()) / static_cast<double>(sa.length());
    ratio_ok = ratio_ok && ratio <= 4.5;
    bound_ok = bound_ok && sa.bound_variables == 8 * n * n + 20 * n - 9;
    rows.push_back(Json{{"n", n},
                        {"length_n", a.length()},
                        {"length_2n", b.length()},
                        {"ratio", ratio},
                        {"sparse_length_n", sa.length()},
                        {"sparse_ratio", sratio},
                        {"sparse_bound_variables", sa.bound_variables}});
  }
  ok = m_ok && gamma_ok && ratio_ok && bound_ok;
  return Json{{"m_formula", m_ok}, {"gamma_bounded", gamma_ok}, {"sparse_bound_variable_count", bound_ok},
              {"ratio_limit", 4.5}, {"rows", rows}};
}

inline Json criterion_vc(const ReproduceOptions&, bool& ok) {
  const auto cls = affine_class(-1, 1);
  const std::vector<Point> pool{{Rational(-1)}, {Rational(0)}, {Rational(1)}, {Rational(2)}};
  const auto sh = vc_shatter_oracle(cls, pool, 3);
  const auto up = vc_upper(2, 1);  // two coefficients, encoding linear in the code
  const auto w = wlt_vc_sandwich(4, 1, Rational(1));
  ok = sh.dimension == 2 && sh.dimension <= up.max_dim && w.lower == Rational(3) && w.upper == 10368 && w.upper_exact;
  return Json{{"shatter_dimension", sh.dimension},
              {"vc_upper_max_dim", up.max_dim},
              {"wlt_lower", w.lower.str()},
              {"wlt_upper", w.upper.get_str()}};
}

inline Json criterion_oracle_soundness(const ReproduceOptions& o, bool& ok) {
  std::size_t mismatches = 0, evaluations = 0;
  const RationalField q;
  for (std::uint64_t k = 0; k < 500; ++k) {
    const std::uint64_t s = derive(o.seed, {12, k});
    RandomSlpShape shape;
    shape.params = 1 + s % 2;
    shape.vars = 1 + (s >> 8) % 3;
    shape.instructions = 4 + (s >> 16) % 9;
    const Slp f = random_slp(s, shape);
    const MultiPoly e = expand(f);
    CounterRng rng(s, 1);
    for (int p = 0; p < 20; ++p) {
      std::vector<Rational> params(f.params.size()), vars(f.vars.size());
      for (auto& x : params) x = rng.rational(7, 4);
      for (auto& x : vars) x = rng.rational(7, 4);
      std::vector<Rational> all = params;
      all.insert(all.end(), vars.begin(), vars.end());
      const Rational direct = evaluate(f, q, std::span<const Rational>(params), std::span<const Rational>(vars))[0];
      ++evaluations;
      if (!(e.evaluate(std::span<const Rational>(all)) == direct)) ++mismatches;
    }
  }
  std::size_t roundtrips = 0, failures = 0, resamples = 0;
  for (std::uint64_t k = 0; k < 200; ++k) {
    const std::uint64_t s = derive(o.seed, {12, 1000 + k});
    CounterRng rng(s, 2);
    const std::size_t t = 1 + rng.below(2);
    std::vector<std::string> vars;
    for (std::size_t i = 1; i <= t; ++i) vars.push_back(indexed("Y", i));
    const auto basis = MonomialBasis::total_degree(vars, static_cast<std::uint32_t>(1 + rng.below(3)));
    std::vector<Rational> coeffs(basis.size());
    for (auto& c : coeffs) c = rng.rational(9, 5);
    const MultiPoly f = basis.combine(coeffs);
    for (std::uint64_t attempt = 0;; ++attempt) {
      const auto gamma = share(sample_points(basis.size() + 2, t, Integer(1000), derive(s, {attempt})));
      try {
        const auto back = decode(encode(f, gamma, vars), basis);
        ++roundtrips;
        if (!(back == f)) ++failures;
        break;
      } catch (const SingularSystem&) {
        ++resamples;
      }
    }
  }
  ok = mismatches == 0 && failures == 0 && roundtrips == 200;
  return Json{{"random_programs", 500},
              {"evaluations", evaluations},
              {"mismatches", mismatches},
              {"roundtrips", roundtrips},
              {"roundtrip_failures", failures},
              {"singular_resamples", resamples}};
}

}  // namespace detail

struct CriterionSpec {
  int id;
  const char* name;
  Json (*run)(const ReproduceOptions&, bool&);
};

inline const std::vector<CriterionSpec>& criteria() {
  static const std::vector<CriterionSpec> all{
      {1, "linear independence of L_1..L_{2^n}", detail::criterion_independence},
      {2, "first-order structure of P_n mod T^2", detail::criterion_first_order},
      {3, "output-size lower bound m* >= 2^n", detail::criterion_blowup},
      {4, "circuit sizes of F_n and R_n", detail::criterion_circuit_sizes},
      {5, "sparsity counts of F_n", detail::criterion_sparsity},
      {6, "sequence bounds and identification statistics", detail::criterion_sequences},
      {7, "elimination cross-oracle", detail::criterion_elimination},
      {8, "robustness dichotomy probes", detail::criterion_robustness},
      {9, "tangent-rank transport", detail::criterion_tangent},
      {10, "formula growth", detail::criterion_formula_growth},
      {11, "VC suite", detail::criterion_vc},
      {12, "oracle soundness", detail::criterion_oracle_soundness},
  };
  return all;
}

inline CriterionResult run_criterion(const CriterionSpec& c, const ReproduceOptions& o) {
  if (o.progress) o.progress("criterion " + std::to_string(c.id) + ": " + c.name);
  CriterionResult r{c.id, c.name, false, Json::object(), 0};
  const auto t0 = std::chrono::steady_clock::now();
  try {
    r.details = c.run(o, r.passed);
  } catch (const std::exception& e) {
    r.passed = false;
    r.details = Json{{"error", e.what()}};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

inline std::vector<CriterionResult> reproduce_all(const ReproduceOptions& o) {
  std::vector<CriterionResult> out;
  for (const auto& c : criteria()) out.push_back(run_criterion(c, o));
  return out;
}

}  // namespace elimkit
