#pragma once

// JSON views of the toolkit's reports. Rationals and big integers are strings.

#include <string>
#include <vector>

#include "json.hpp"

#include "elimkit/bounds.hpp"
#include "elimkit/families.hpp"
#include "elimkit/harness.hpp"
#include "elimkit/sequences.hpp"
#include "elimkit/slp.hpp"
#include "elimkit/value_encoding.hpp"

namespace elimkit {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& q) { return q.str(); }
inline Json to_json(const Integer& z) { return z.get_str(); }

inline Json to_json(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

inline Json to_json(const std::vector<std::vector<Rational>>& pts) {
  Json a = Json::array();
  for (const auto& p : pts) a.push_back(to_json(p));
  return a;
}

inline Json to_json(const TestSequence& s) {
  return Json{{"m", s.m}, {"t", s.t}, {"M", s.M.get_str()}, {"seed", s.seed}, {"id", s.id()}, {"points", to_json(s.points)}};
}

inline TestSequence sequence_from_json(const Json& j) {
  TestSequence s;
  s.t = j.at("t").get<std::uint64_t>();
  s.seed = j.value("seed", std::uint64_t{0});
  const auto& M = j.at("M");
  s.M = Integer(M.is_string() ? M.get<std::string>() : std::to_string(M.get<std::uint64_t>()));
  for (const auto& p : j.at("points")) {
    Point pt;
    for (const auto& x : p) pt.push_back(x.is_string() ? Rational::parse(x.get<std::string>()) : Rational(x.get<long>()));
    if (pt.size() != s.t) throw PreconditionError("sequence JSON: point dimension differs from t");
    s.points.push_back(std::move(pt));
  }
  s.m = s.points.size();
  if (j.contains("m") && j.at("m").get<std::uint64_t>() != s.m) throw PreconditionError("sequence JSON: m differs from point count");
  return s;
}

inline Json to_json(const ValueCode& c) { return Json{{"gamma_id", c.gamma_id}, {"values", to_json(c.values)}}; }

inline Json to_json(const SlpProfile& p) {
  return Json{{"L_over_params", p.size_over_params},
              {"L_over_scalars", p.size_over_scalars},
              {"total_ops", p.total_ops},
              {"outputs", p.outputs},
              {"var_degree_bound", p.var_degree_bound},
              {"param_degree_bound", p.param_degree_bound}};
}

inline Json to_json(const RankCertificate& c) {
  Json pivots = Json::array();
  for (const auto& p : c.pivots) pivots.push_back(Json::array({p.row, p.col}));
  Json j{{"description", c.description}, {"rows", c.rows},          {"cols", c.cols},
         {"side", c.side()},             {"rank", c.rank},          {"full_rank", c.full()},
         {"field", c.field_name()},      {"pivots", pivots}};
  if (c.field == FieldKind::Prime) j["modulus"] = c.modulus;
  if (c.seed) j["seed"] = *c.seed;
  if (!c.points.empty()) j["points"] = to_json(c.points);
  j["notes"] = c.notes;
  return j;
}

inline Json to_json(const LkRankResult& r) {
  Json attempts = Json::array();
  for (const auto& a : r.attempts) attempts.push_back(Json{{"seed", a.seed}, {"rank", a.rank}});
  return Json{{"certificate", to_json(r.certificate)}, {"attempts", attempts}};
}

inline Json to_json(const BlowupReport& r) {
  return Json{{"n", r.n},
              {"independent_directions", r.independent_directions},
              {"certified_lower_bound_m_star", r.certified_lower_bound},
              {"certificates", Json::array({to_json(r.independence), to_json(r.lk)})}};
}

inline Json to_json(const FirstOrder& fo) {
  Json L = Json::array();
  for (std::size_t k = 0; k < fo.L.rows(); ++k) {
    Json row = Json::array();
    for (std::size_t j = 0; j < fo.L.cols(); ++j) row.push_back(fo.L(k, j).get_str());
    L.push_back(row);
  }
  Json beta = Json::array();
  for (const auto& b : fo.beta) beta.push_back(b.get_str());
  return Json{{"n", fo.n},
              {"convention", fo.convention == SignConvention::True ? "signed" : "printed"},
              {"beta", beta},
              {"L", L},
              {"L_basis", "column j is the monomial prod_i U_i^(bit i-1 of j)"}};
}

inline Json to_json(const Paradigm1Probe& p) {
  return Json{{"paradigm", 1}, {"d", p.d}, {"p", p.p}, {"fiber", p.fiber}, {"fiber_size", p.fiber.size()}, {"ok", p.ok}};
}

inline Json to_json(const Paradigm2Probe& p) {
  return Json{{"paradigm", 2},
              {"n", p.n},
              {"samples", p.samples},
              {"seed", p.seed},
              {"slice_t0_constant", p.slice_constant},
              {"slice_t0_polynomial", p.slice_polynomial},
              {"varies_at_t1", p.varies_with_t},
              {"distinct_at_t1", p.distinct_at_t1},
              {"ok", p.slice_constant && (p.samples < 2 || p.varies_with_t)}};
}

inline Json to_json(const DistinctnessReport& r) {
  Json ce = Json::array();
  for (const auto& c : r.counterexamples) ce.push_back(Json{{"a", to_json(c.a)}, {"b", to_json(c.b)}});
  return Json{{"n", r.n},
              {"trials", r.trials},
              {"seed", r.seed},
              {"distinct_pairs", r.distinct_pairs},
              {"equal_pairs", r.equal_pairs},
              {"counterexamples", ce}};
}

inline Json to_json(const VcUpper& v) {
  Json j{{"L", v.L}, {"Delta2", v.Delta2}, {"variant", v.variant == VcVariant::Complex ? "complex" : "real"}};
  j["rhs"] = v.rhs_exact ? Json(v.rhs_exact->str()) : Json(nullptr);
  j["rhs_enclosure"] = Json::array({v.rhs_lower, v.rhs_upper});
  j["max_dim"] = v.max_dim;
  j["notes"] = v.notes;
  return j;
}

inline Json to_json(const WltSandwich& w) {
  return Json{{"lower", w.lower.str()},
              {"upper", w.upper.get_str()},
              {"upper_floor", w.upper_floor.get_str()},
              {"upper_exact", w.upper_exact}};
}

inline Json to_json(const ShatterResult& r, const std::vector<Point>& pool, const PolyClass& cls) {
  Json witness = Json::array();
  for (auto i : r.witness) witness.push_back(to_json(pool[i]));
  Json pats = Json::array();
  for (const auto& [mask, k] : r.patterns) {
    Json subset = Json::array();
    for (std::size_t i = 0; i < r.witness.size(); ++i)
      if (mask >> i & 1ULL) subset.push_back(to_json(pool[r.witness[i]]));
    pats.push_back(Json{{"zero_set", subset}, {"member", cls.members.at(k).str()}});
  }
  return Json{{"dimension", r.dimension}, {"witness", witness}, {"patterns", pats}, {"work", r.work}};
}

/// One named bound with a descriptive anchor.
inline Json bound_entry(const std::string& name, const std::string& value, const std::string& anchor) {
  return Json{{"name", name}, {"value", value}, {"anchor", anchor}};
}

}  // namespace elimkit
