// elimkit command-line front end. JSON reports on stdout, progress on stderr.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 budget exceeded.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "elimkit/bounds.hpp"
#include "elimkit/expand.hpp"
#include "elimkit/families.hpp"
#include "elimkit/harness.hpp"
#include "elimkit/json_io.hpp"
#include "elimkit/reproduce.hpp"
#include "elimkit/sequences.hpp"
#include "elimkit/slp_text.hpp"
#include "elimkit/value_encoding.hpp"

using namespace elimkit;

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Outcome {
  Json result;
  std::optional<bool> verdict;  // set by checks; false maps to exit 1
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  if (s.empty()) return out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    const auto a = cur.find_first_not_of(" \t");
    const auto b = cur.find_last_not_of(" \t");
    out.push_back(a == std::string::npos ? "" : cur.substr(a, b - a + 1));
  }
  return out;
}

std::vector<Rational> rationals(const std::string& s) {
  std::vector<Rational> out;
  for (const auto& x : split(s, ',')) out.push_back(Rational::parse(x));
  return out;
}

std::map<std::string, Rational> assignments(const std::string& s) {
  std::map<std::string, Rational> out;
  for (const auto& kv : split(s, ',')) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError("expected name=value in --at, got '" + kv + "'");
    out[kv.substr(0, eq)] = Rational::parse(kv.substr(eq + 1));
  }
  return out;
}

std::vector<Point> points(const std::string& s) {
  std::vector<Point> out;
  for (const auto& p : split(s, ';')) out.push_back(rationals(p));
  return out;
}

/// One polynomial per line; '#' comments and blank lines are skipped.
std::vector<MultiPoly> read_class_file(const std::string& path) {
  std::vector<MultiPoly> out;
  std::istringstream in(read_file(path));
  std::string line;
  while (std::getline(in, line)) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(MultiPoly::parse(line));
  }
  return out;
}

Json integer_json(const Integer& z) {
  if (z.fits_ulong_p()) return static_cast<std::uint64_t>(z.get_ui());
  return z.get_str();
}

Json slp_json(const Slp& f) {
  return Json{{"params", f.params}, {"vars", f.vars}, {"profile", to_json(profile(f))}, {"text", serialize_slp(f)}};
}

Rational parse_rational_opt(const std::string& s, const char* what) {
  try {
    return Rational::parse(s);
  } catch (const PreconditionError&) {
    throw UsageError(std::string("malformed rational for ") + what + ": '" + s + "'");
  }
}

struct Options {
  std::uint64_t seed = 0;
  bool payload = false;
  std::string file, at, gamma, class_file, kind = "identification", variant, poly, poly2, values, basis, vars, pool,
      field = "auto", mode = "essential", params, t_str, u_str, eps = "1", code;
  std::uint64_t L = 1, t = 1, n = 0, d = 0, p = 0, delta = 1, K = 0, delta1 = 1, delta2 = 1, samples = 20,
                trials = 100, max_s = 3, output = 0, degree = 1, m = 0, paradigm = 2, max_n = 20;
  std::string a = "0", b = "0", M;
  bool equidim = false, first_order = false, printed = false, expand_flag = false, all = false;
  std::vector<int> only;
};

ClassSpec class_spec(const Options& o) {
  ClassSpec s;
  s.L = o.L;
  s.t = o.t;
  s.Delta = o.delta;
  s.K = o.K;
  s.Delta1 = o.delta1;
  s.Delta2 = o.delta2;
  return s;
}

std::shared_ptr<const TestSequence> load_gamma(const Options& o) {
  if (o.gamma.empty()) throw UsageError("--gamma <path> is required");
  try {
    return share(sequence_from_json(Json::parse(read_file(o.gamma))));
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad sequence file: ") + e.what());
  }
}

/// Sequence from --gamma when given, else sampled from the class parameters.
TestSequence gamma_or_sample(const Options& o) {
  if (!o.gamma.empty()) return *load_gamma(o);
  return sample_sequence(class_spec(o), parse_kind(o.kind), o.seed);
}

std::pair<Rational, std::vector<Rational>> t_and_u(const Options& o, std::size_t n) {
  const Rational t = parse_rational_opt(o.t_str, "--t");
  std::vector<Rational> u = o.u_str.empty() ? std::vector<Rational>(n, Rational(0)) : rationals(o.u_str);
  if (u.size() != n) throw UsageError("--u needs " + std::to_string(n) + " comma-separated values");
  return {t, u};
}

FieldKind field_for(const Options& o, std::size_t n) {
  if (o.field == "q" || o.field == "Q") return FieldKind::Rationals;
  if (o.field == "p") return FieldKind::Prime;
  if (o.field != "auto") throw UsageError("--field must be q, p or auto");
  return n <= kMaxRationalRankN ? FieldKind::Rationals : FieldKind::Prime;
}

PhiVariant phi_variant(const std::string& v) {
  if (v.empty() || v == "circuit") return PhiVariant::Circuit;
  if (v == "sparse") return PhiVariant::Sparse;
  throw UsageError("--variant must be circuit or sparse");
}

// ---------------------------------------------------------------------------

Outcome cmd_slp(const std::string& op, const Options& o) {
  if (o.file.empty()) throw UsageError("--file <path> is required");
  const Slp f = parse_slp(read_file(o.file));
  if (op == "validate") {
    const auto r = validate(f, o.mode == "total" ? DivisionMode::Total : DivisionMode::Essential);
    Json j{{"ok", r.ok}, {"reason", r.reason}};
    j["node"] = r.node ? Json(*r.node) : Json(nullptr);
    return {j, r.ok};
  }
  if (auto r = validate(f); !r) throw PreconditionError("invalid program: " + r.reason);
  if (op == "profile") return {to_json(profile(f)), std::nullopt};
  if (op == "eval") {
    const auto v = evaluate_at(f, assignments(o.at));
    return {Json{{"outputs", to_json(v)}}, std::nullopt};
  }
  // expand, optionally specialized afterwards
  MultiPoly e = expand(f, o.output);
  if (!o.at.empty()) e = e.substitute(assignments(o.at));
  return {Json{{"polynomial", e.str()}, {"terms", e.size()}}, std::nullopt};
}

Outcome cmd_seq(const std::string& op, const Options& o) {
  const auto kind = parse_kind(o.kind);
  if (op == "params") {
    const auto s = class_spec(o);
    return {Json{{"m", required_length(s, kind)}, {"M", integer_json(required_set_size(s, kind))}}, std::nullopt};
  }
  if (op == "sample") return {to_json(sample_sequence(class_spec(o), kind, o.seed)), std::nullopt};
  const TestSequence seq = gamma_or_sample(o);
  if (op == "verify") {
    if (o.class_file.empty()) throw UsageError("--class-file <path> is required");
    const auto cls = PolyClass::of(read_class_file(o.class_file));
    if (kind == SequenceKind::CorrectTest) {
      const auto r = is_correct_test_sequence(seq, cls);
      Json j{{"kind", kind_name(kind)}, {"sequence_id", seq.id()}, {"ok", r.ok}};
      j["witness"] = r.witness ? Json(cls.members.at(*r.witness).str()) : Json(nullptr);
      return {j, r.ok};
    }
    const auto r = is_identification_sequence(seq, cls);
    Json j{{"kind", kind_name(kind)}, {"sequence_id", seq.id()}, {"ok", r.ok}};
    j["witness"] = r.witness ? Json::array({cls.members.at(r.witness->first).str(), cls.members.at(r.witness->second).str()})
                             : Json(nullptr);
    return {j, r.ok};
  }
  // pit
  if (o.file.empty()) throw UsageError("--file <path> is required");
  const Slp f = parse_slp(read_file(o.file));
  const auto v = pit(f, seq, o.output);
  Json j{{"sequence_id", seq.id()}, {"zero", v.zero}};
  j["witness"] = v.witness ? Json(*v.witness) : Json(nullptr);
  if (v.witness) j["value"] = v.value.str();
  return {j, std::nullopt};
}

MonomialBasis basis_from(const Options& o) {
  const auto vars = split(o.vars, ',');
  if (!o.basis.empty()) {
    std::vector<MultiPoly> monos;
    for (const auto& m : split(o.basis, ',')) monos.push_back(MultiPoly::parse(m, vars));
    return MonomialBasis::from_polys(monos, vars);
  }
  return MonomialBasis::total_degree(vars, static_cast<std::uint32_t>(o.degree));
}

ValueCode code_of(const std::string& poly, const Options& o, const std::shared_ptr<const TestSequence>& g) {
  return encode(MultiPoly::parse(poly), g, split(o.vars, ','));
}

Outcome cmd_encode(const std::string& op, const Options& o) {
  const auto g = load_gamma(o);
  if (op == "values") {
    if (!o.file.empty()) return {to_json(encode(parse_slp(read_file(o.file)), g, o.output)), std::nullopt};
    if (o.poly.empty()) throw UsageError("--poly or --file is required");
    return {to_json(code_of(o.poly, o, g)), std::nullopt};
  }
  if (op == "decode") {
    if (o.values.empty()) throw UsageError("--values is required");
    ValueCode c{g, g->id(), rationals(o.values)};
    if (c.values.size() != g->points.size()) throw UsageError("--values length differs from the sequence length");
    return {Json{{"polynomial", decode(c, basis_from(o)).str()}}, std::nullopt};
  }
  if (o.poly.empty() || o.poly2.empty()) throw UsageError("--poly and --poly2 are required");
  const bool eq = code_eq(code_of(o.poly, o, g), code_of(o.poly2, o, g));
  return {Json{{"gamma_id", g->id()}, {"equal", eq}}, std::nullopt};
}

Json phi_json(const PhiFormula& f) {
  return Json{{"n", f.n},
              {"variant", f.variant == PhiVariant::Circuit ? "circuit" : "sparse"},
              {"m", f.m},
              {"gamma_seed", f.gamma_seed},
              {"gamma", f.gamma},
              {"bound_variables", f.bound_variables},
              {"length", f.length()},
              {"text", f.text}};
}

Outcome cmd_family(const std::string& op, const Options& o) {
  if (op == "fd") {
    if (o.d < 1) throw UsageError("--d >= 1 is required");
    return {Json{{"d", o.d}, {"closed_form", fd_closed_form(o.d).str()}, {"slp", slp_json(fd_slp(o.d))}}, std::nullopt};
  }
  if (o.n < 1) throw UsageError("--n >= 1 is required");
  if (op == "pn") {
    if (o.first_order)
      return {to_json(pn_first_order(o.n, o.printed ? SignConvention::Printed : SignConvention::True)), std::nullopt};
    if (!o.t_str.empty()) {
      auto [t, u] = t_and_u(o, o.n);
      return {pn_specialized(o.n, t, u).str(), std::nullopt};
    }
    return {Json{{"n", o.n}, {"slp", slp_json(pn_slp(o.n))}}, std::nullopt};
  }
  if (op == "fn") {
    if (!o.t_str.empty()) {
      auto [t, u] = t_and_u(o, o.n);
      std::map<std::string, Rational> at{{"T", t}};
      for (std::size_t i = 1; i <= o.n; ++i) at[indexed("U", i)] = u[i - 1];
      return {fn_closed_form(o.n).substitute(at).str(), std::nullopt};
    }
    Json j{{"n", o.n}, {"slp", slp_json(fn_slp(o.n).F)}};
    if (o.expand_flag) j["closed_form"] = fn_closed_form(o.n).str();
    return {j, std::nullopt};
  }
  if (op == "gtilde") {
    const auto s = gtilde_system(o.n);
    Json eqs = Json::array();
    for (const auto& e : s.equations) eqs.push_back(e.str());
    return {Json{{"n", o.n}, {"variables", s.variables}, {"equations", eqs}, {"F", s.F.str()}}, std::nullopt};
  }
  if (op == "rn") return {Json{{"n", o.n}, {"slp", slp_json(rn_slp(o.n))}}, std::nullopt};
  return {phi_json(phi_formula(o.n, phi_variant(o.variant), o.seed)), std::nullopt};
}

Outcome cmd_harness(const std::string& op, const Options& o) {
  if (op == "tangent") {
    const auto c = tangent_rank_paradigm1(o.d, o.p);
    return {to_json(c), c.full()};
  }
  if (op == "robust") {
    if (o.paradigm == 1) {
      const auto r = robustness_probe_paradigm1(o.d, o.p);
      return {to_json(r), r.ok};
    }
    if (o.paradigm != 2) throw UsageError("--paradigm must be 1 or 2");
    const auto r = robustness_probe_paradigm2(o.n, o.samples, o.seed);
    return {to_json(r), r.slice_constant && (r.samples < 2 || r.varies_with_t)};
  }
  if (op == "separable") {
    if (o.poly.empty()) throw UsageError("--poly is required");
    const auto r = separability_check(MultiPoly::parse(o.poly));
    return {Json{{"separable", r.separable}, {"gcd_with_derivative", r.gcd_with_derivative.str()}}, r.separable};
  }
  if (op == "elim") {
    const HypercubeFamily fam = o.file.empty() ? fn_slp(o.n) : hypercube_family(parse_slp(read_file(o.file)));
    if (o.first_order)
      return {to_json(eliminate_hypercube_first_order(fam, o.printed ? SignConvention::Printed : SignConvention::True)),
              std::nullopt};
    if (!o.file.empty()) return {eliminate_hypercube(fam, rationals(o.params)).str(), std::nullopt};
    if (o.t_str.empty()) throw UsageError("--t is required (or --first-order)");
    auto [t, u] = t_and_u(o, o.n);
    return {eliminate_hypercube(fam, t, u).str(), std::nullopt};
  }
  if (op == "independence") {
    const auto c = independence_rank(o.n, field_for(o, o.n));
    return {to_json(c), c.full()};
  }
  if (op == "lk-rank") {
    try {
      const auto r = lk_at_points_rank(o.n, o.seed, field_for(o, o.n),
                                       o.printed ? SignConvention::Printed : SignConvention::True);
      return {to_json(r), r.certificate.full()};
    } catch (const PreconditionError&) {
      throw;
    } catch (const Error& e) {
      return {Json{{"error", e.what()}}, false};
    }
  }
  if (op == "blowup") {
    const auto r = blowup_report(o.n, o.seed);
    return {to_json(r), r.certified_lower_bound == r.independent_directions};
  }
  // distinctness
  const auto r = distinctness_probe_gamma_n(o.n, o.trials, o.seed);
  return {to_json(r), r.counterexamples.empty()};
}

Outcome cmd_bounds(const std::string& op, const Options& o) {
  if (op == "bezout") {
    const Integer a(o.a), b(o.b);
    return {Json{{"value", integer_json(bezout(a, b))}, {"anchor", "deg(V cap W) <= deg V * deg W"}}, std::nullopt};
  }
  if (op == "degree") {
    const auto s = class_spec(o);
    const auto b = degree_bounds(s, o.equidim);
    return {Json{{"bounds",
                  Json::array({bound_entry("deg_D", b.deg_D.get_str(), "deg D <= (1 + K*Delta1)^L"),
                               bound_entry("deg_O", b.deg_O.get_str(),
                                           o.equidim ? "deg O <= Delta2^L * deg D (equidimensional)"
                                                     : "deg O <= (L+1) * Delta2^L * deg D")})}},
            std::nullopt};
  }
  if (op == "vc") {
    VcVariant v = VcVariant::Complex;
    if (o.variant == "real") v = VcVariant::Real;
    else if (!o.variant.empty() && o.variant != "complex") throw UsageError("--variant must be complex or real");
    Json j = to_json(vc_upper(o.L, o.delta2, v));
    j["anchor"] = v == VcVariant::Complex ? "dim / log2 dim <= L (1 + log2 Delta2)" : "dim / log2 dim <= (L+1) log2 Delta2";
    return {j, std::nullopt};
  }
  if (op == "wlt") {
    Json j = to_json(wlt_vc_sandwich(o.L, o.t, parse_rational_opt(o.eps, "--eps")));
    j["anchor"] = "L^2/4 - 1 < dim_VC(W_{L,t}) <= 8 (L+t+1)^(3+eps)";
    return {j, std::nullopt};
  }
  // shatter
  if (o.class_file.empty()) throw UsageError("--class-file <path> is required");
  const auto cls = PolyClass::of(read_class_file(o.class_file));
  const auto pool = points(o.pool);
  return {to_json(vc_shatter_oracle(cls, pool, o.max_s), pool, cls), std::nullopt};
}

Outcome cmd_reproduce(const Options& o, Json& timings) {
  if (!o.all && o.only.empty()) throw UsageError("reproduce needs --all or --only");
  ReproduceOptions ro;
  ro.seed = o.seed;
  ro.max_n = o.max_n;
  ro.progress = [](const std::string& s) { std::cerr << "[reproduce] " << s << std::endl; };
  std::vector<CriterionResult> results;
  for (const auto& c : criteria())
    if (o.all || std::find(o.only.begin(), o.only.end(), c.id) != o.only.end()) results.push_back(run_criterion(c, ro));
  Json rows = Json::array();
  bool all_ok = true;
  timings = Json::object();
  for (const auto& r : results) {
    all_ok = all_ok && r.passed;
    rows.push_back(Json{{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"details", r.details}});
    timings[std::to_string(r.id)] = r.seconds;
    std::cerr << (r.passed ? "PASS" : "FAIL") << "  " << std::setw(2) << r.id << "  " << r.name << "  ("
              << std::fixed << std::setprecision(2) << r.seconds << " s)" << std::endl;
  }
  return {Json{{"seed", o.seed}, {"max_n", o.max_n}, {"criteria", rows}, {"all_passed", all_ok}}, all_ok};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"elimkit: elimination, test sequences and certificates"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--seed", o.seed, "master seed (default 0)");
  app.add_flag("--payload", o.payload, "print only the result payload");

  std::function<Outcome()> action;
  Json timings;
  auto leaf = [&](CLI::App* group, const std::string& name, const std::string& help, auto fn) {
    auto* s = group->add_subcommand(name, help);
    s->callback([&action, fn, name] { action = [fn, name] { return fn(name); }; });
    return s;
  };

  auto* slp = app.add_subcommand("slp", "straight-line programs")->require_subcommand(1);
  for (const char* op : {"eval", "expand", "profile", "validate"}) {
    auto* s = leaf(slp, op, std::string(op) + " a program file", [&o](const std::string& n) { return cmd_slp(n, o); });
    s->add_option("--file", o.file, "program in slp text format")->required();
    s->add_option("--at", o.at, "name=value,... assignments");
    s->add_option("--output", o.output, "output index");
    s->add_option("--mode", o.mode, "division mode: essential|total");
  }

  auto* seq = app.add_subcommand("seq", "test sequences")->require_subcommand(1);
  for (const char* op : {"params", "sample", "verify", "pit"}) {
    auto* s = leaf(seq, op, std::string(op), [&o](const std::string& n) { return cmd_seq(n, o); });
    s->add_option("--L", o.L, "circuit size bound");
    s->add_option("--t", o.t, "number of variables");
    s->add_option("--delta", o.delta, "degree bound Delta");
    s->add_option("--K", o.K);
    s->add_option("--delta1", o.delta1);
    s->add_option("--delta2", o.delta2);
    s->add_option("--kind", o.kind, "correct-test|identification|circuit");
    s->add_option("--class-file", o.class_file, "polynomials, one per line");
    s->add_option("--gamma", o.gamma, "sequence JSON file");
    s->add_option("--file", o.file, "program file (pit)");
    s->add_option("--output", o.output);
  }

  auto* enc = app.add_subcommand("encode", "value encodings")->require_subcommand(1);
  for (const char* op : {"values", "decode", "eq"}) {
    auto* s = leaf(enc, op, std::string(op), [&o](const std::string& n) { return cmd_encode(n, o); });
    s->add_option("--gamma", o.gamma, "sequence JSON file")->required();
    s->add_option("--poly", o.poly);
    s->add_option("--poly2", o.poly2);
    s->add_option("--file", o.file);
    s->add_option("--output", o.output);
    s->add_option("--values", o.values, "comma-separated code values");
    s->add_option("--vars", o.vars, "comma-separated variable order");
    s->add_option("--basis", o.basis, "comma-separated monomials");
    s->add_option("--degree", o.degree, "total-degree basis when --basis is absent");
  }

  auto* fam = app.add_subcommand("family", "hard families")->require_subcommand(1);
  for (const char* op : {"fd", "pn", "fn", "gtilde", "rn", "phi"}) {
    auto* s = leaf(fam, op, std::string(op), [&o](const std::string& n) { return cmd_family(n, o); });
    s->add_option("--n", o.n);
    s->add_option("--d", o.d);
    s->add_option("--t", o.t_str, "rational value of T");
    s->add_option("--u", o.u_str, "comma-separated values of U1..Un (default 0)");
    s->add_option("--variant", o.variant, "circuit|sparse");
    s->add_flag("--first-order", o.first_order);
    s->add_flag("--printed", o.printed, "unsigned coefficient convention");
    s->add_flag("--expand", o.expand_flag);
  }

  auto* har = app.add_subcommand("harness", "elimination and certificates")->require_subcommand(1);
  for (const char* op : {"elim", "independence", "lk-rank", "tangent", "blowup", "robust", "distinctness", "separable"}) {
    auto* s = leaf(har, op, std::string(op), [&o](const std::string& n) { return cmd_harness(n, o); });
    s->add_option("--n", o.n);
    s->add_option("--d", o.d);
    s->add_option("--p", o.p, "prime");
    s->add_option("--t", o.t_str);
    s->add_option("--u", o.u_str);
    s->add_option("--file", o.file, "custom hypercube family program");
    s->add_option("--params", o.params, "parameter values for --file");
    s->add_option("--field", o.field, "q|p|auto");
    s->add_option("--paradigm", o.paradigm);
    s->add_option("--samples", o.samples);
    s->add_option("--trials", o.trials);
    s->add_option("--poly", o.poly);
    s->add_flag("--first-order", o.first_order);
    s->add_flag("--printed", o.printed);
  }

  auto* bnd = app.add_subcommand("bounds", "bound calculators")->require_subcommand(1);
  for (const char* op : {"bezout", "degree", "vc", "wlt", "shatter"}) {
    auto* s = leaf(bnd, op, std::string(op), [&o](const std::string& n) { return cmd_bounds(n, o); });
    s->add_option("--a", o.a);
    s->add_option("--b", o.b);
    s->add_option("--L", o.L);
    s->add_option("--t", o.t);
    s->add_option("--K", o.K);
    s->add_option("--delta1", o.delta1);
    s->add_option("--delta2", o.delta2);
    s->add_flag("--equidim", o.equidim);
    s->add_option("--variant", o.variant, "complex|real");
    s->add_option("--eps", o.eps, "positive rational");
    s->add_option("--class-file", o.class_file);
    s->add_option("--pool", o.pool, "points 'x,y;x,y;...'");
    s->add_option("--max-s", o.max_s);
  }

  auto* rep = app.add_subcommand("reproduce", "run the acceptance suite");
  rep->add_flag("--all", o.all);
  rep->add_option("--only", o.only, "criterion ids");
  rep->add_option("--max-n", o.max_n, "cap on every n-range");
  rep->callback([&] { action = [&] { return cmd_reproduce(o, timings); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::string command;
  for (int i = 1; i < argc; ++i) command += (i > 1 ? " " : "") + std::string(argv[i]);
  const auto t0 = std::chrono::steady_clock::now();
  auto fail = [&](int code, const std::string& kind, const std::string& msg) {
    std::cerr << "elimkit: " << msg << std::endl;
    Json err{{"command", command}, {"seed", o.seed}, {"error", Json{{"kind", kind}, {"message", msg}}}};
    std::cout << err.dump(2) << std::endl;
    return code;
  };
  try {
    const Outcome out = action();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.payload) {
      std::cout << (out.result.is_string() ? out.result.get<std::string>() : out.result.dump()) << std::endl;
    } else {
      Json report{{"command", command}, {"seed", o.seed}, {"result", out.result}};
      if (out.verdict) report["verdict"] = *out.verdict ? "pass" : "fail";
      if (!timings.is_null()) report["timings_s"] = timings;
      report["wall_time_s"] = secs;
      std::cout << report.dump(2) << std::endl;
    }
    return out.verdict.value_or(true) ? 0 : 1;
  } catch (const BudgetExceeded& e) {
    return fail(3, "budget", e.what());
  } catch (const UsageError& e) {
    return fail(2, "usage", e.what());
  } catch (const PreconditionError& e) {
    return fail(2, "precondition", e.what());
  } catch (const ParseError& e) {
    return fail(2, "parse", e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(2, "json", e.what());
  } catch (const Error& e) {
    return fail(1, "error", e.what());
  }
}
