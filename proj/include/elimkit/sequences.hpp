#pragma once

#include <cstdint>
#include <iomanip>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "elimkit/errors.hpp"
#include "elimkit/interpolate.hpp"
#include "elimkit/multipoly.hpp"
#include "elimkit/random.hpp"
#include "elimkit/slp.hpp"

namespace elimkit {

/// Parameters of an object class with a holomorphic encoding of size L.
struct ClassSpec {
  std::uint64_t L = 1;
  std::uint64_t t = 1;
  std::uint64_t Delta = 1;
  std::uint64_t K = 0;
  std::uint64_t Delta1 = 1;
  std::uint64_t Delta2 = 1;
  std::optional<Integer> deg_closure_override;

  void check() const {
    if (L < 1 || t < 1 || Delta < 1 || Delta2 < 1) throw PreconditionError("ClassSpec: need L, t, Delta, Delta2 >= 1");
    if (deg_closure_override && *deg_closure_override < 1)
      throw PreconditionError("ClassSpec: degree override must be positive");
  }
};

enum class SequenceKind { CorrectTest, Identification, CircuitClass };

inline const char* kind_name(SequenceKind k) {
  switch (k) {
    case SequenceKind::CorrectTest: return "correct-test";
    case SequenceKind::Identification: return "identification";
    case SequenceKind::CircuitClass: return "circuit";
  }
  return "?";
}

inline SequenceKind parse_kind(const std::string& s) {
  if (s == "correct-test" || s == "correct") return SequenceKind::CorrectTest;
  if (s == "identification" || s == "id") return SequenceKind::Identification;
  if (s == "circuit" || s == "circuit-class") return SequenceKind::CircuitClass;
  throw PreconditionError("unknown sequence kind '" + s + "'");
}

/// Length m: 2L+2, 4L+2 or 4(L+t+1)^2+2.
inline std::uint64_t required_length(const ClassSpec& spec, SequenceKind kind) {
  spec.check();
  switch (kind) {
    case SequenceKind::CorrectTest: return 2 * spec.L + 2;
    case SequenceKind::Identification: return 4 * spec.L + 2;
    case SequenceKind::CircuitClass: {
      const std::uint64_t s = spec.L + spec.t + 1;
      return 4 * s * s + 2;
    }
  }
  return 0;
}

struct DegreeBounds {
  Integer deg_D;
  Integer deg_O;
};

/// deg D <= (1+K*Delta1)^L; deg O <= (L+1) Delta2^L deg D, without (L+1) when equidimensional.
inline DegreeBounds degree_bounds(const ClassSpec& spec, bool equidimensional = false) {
  spec.check();
  const unsigned long L = spec.L;
  DegreeBounds b;
  b.deg_D = ipow(Integer(1UL) + Integer(static_cast<unsigned long>(spec.K)) * static_cast<unsigned long>(spec.Delta1), L);
  b.deg_O = ipow(Integer(static_cast<unsigned long>(spec.Delta2)), L) * b.deg_D;
  if (!equidimensional) b.deg_O *= Integer(L + 1);
  return b;
}

/// Smallest integer x >= 0 with x^k >= a (a >= 0, k >= 1).
inline Integer ceil_root(const Integer& a, unsigned long k) {
  Integer r;
  mpz_root(r.get_mpz_t(), a.get_mpz_t(), k);
  if (ipow(r, k) < a) r += 1;
  return r;
}

/// Minimal #M: max(ceil(Delta^2 deg(O)^(1/L)), 2), or 2^(4(L+1)) for circuit classes.
inline Integer required_set_size(const ClassSpec& spec, SequenceKind kind) {
  spec.check();
  if (kind == SequenceKind::CircuitClass) return pow2(4 * (spec.L + 1));
  const Integer deg_o = spec.deg_closure_override ? *spec.deg_closure_override : degree_bounds(spec).deg_O;
  const unsigned long L = spec.L;
  // Delta^2 * deg_o^(1/L) = (Delta^(2L) * deg_o)^(1/L)
  const Integer target = ipow(Integer(static_cast<unsigned long>(spec.Delta)), 2 * L) * deg_o;
  Integer m = ceil_root(target, L);
  return m < 2 ? Integer(2) : m;
}

/// m points in Z^t with coordinates in [0, M).
struct TestSequence {
  std::vector<Point> points;
  std::uint64_t m = 0;
  std::uint64_t t = 0;
  Integer M = 0;
  std::uint64_t seed = 0;

  /// Content hash identifying the exact point list.
  std::string id() const {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&](const std::string& s) {
      for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
      }
      h ^= 0xff;
      h *= 1099511628211ULL;
    };
    mix(std::to_string(t));
    for (const auto& p : points)
      for (const auto& x : p) mix(x.str());
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
  }

  friend bool operator==(const TestSequence& a, const TestSequence& b) {
    return a.points == b.points && a.t == b.t;
  }
};

/// Uniform integer in [0, M) as a pure function of (seed, i, j).
inline Integer uniform_integer_at(std::uint64_t seed, std::uint64_t i, std::uint64_t j, const Integer& M) {
  if (M <= 0) throw PreconditionError("uniform_integer_at: bound must be positive");
  if (M.fits_ulong_p() && sizeof(unsigned long) == 8)
    return Integer(static_cast<unsigned long>(uniform_at(seed, {i, j}, M.get_ui())));
  const std::size_t bits = mpz_sizeinbase(Integer(M - 1).get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  for (std::uint64_t attempt = 0;; ++attempt) {
    Integer x = 0;
    for (std::size_t w = 0; w < words; ++w) {
      x <<= 64;
      const std::uint64_t r = derive(seed, {i, j, attempt, w});
      x += Integer(static_cast<unsigned long>(r >> 32)) * Integer(4294967296UL) +
           Integer(static_cast<unsigned long>(r & 0xffffffffULL));
    }
    mpz_fdiv_r_2exp(x.get_mpz_t(), x.get_mpz_t(), bits);
    if (x < M) return x;
  }
}

inline TestSequence sample_points(std::uint64_t m, std::uint64_t t, const Integer& M, std::uint64_t seed) {
  TestSequence s;
  s.m = m;
  s.t = t;
  s.M = M;
  s.seed = seed;
  s.points.reserve(m);
  for (std::uint64_t i = 0; i < m; ++i) {
    Point p;
    p.reserve(t);
    for (std::uint64_t j = 0; j < t; ++j) p.emplace_back(uniform_integer_at(seed, i, j, M));
    s.points.push_back(std::move(p));
  }
  return s;
}

inline TestSequence sample_sequence(const ClassSpec& spec, SequenceKind kind, std::uint64_t seed) {
  return sample_points(required_length(spec, kind), spec.t, required_set_size(spec, kind), seed);
}

/// Builds a sequence from explicit points (M is recorded as 0 = unspecified).
inline TestSequence explicit_sequence(std::vector<Point> points) {
  TestSequence s;
  s.t = points.empty() ? 0 : points.front().size();
  for (const auto& p : points)
    if (p.size() != s.t) throw PreconditionError("explicit_sequence: points of different dimensions");
  s.m = points.size();
  s.points = std::move(points);
  return s;
}

/// A finite enumerated object class; `variables` fixes how point coordinates map to names.
struct PolyClass {
  std::vector<std::string> variables;
  std::vector<MultiPoly> members;

  static PolyClass of(std::vector<MultiPoly> members, std::vector<std::string> variables = {}) {
    PolyClass c{std::move(variables), std::move(members)};
    if (c.variables.empty())
      for (const auto& p : c.members) c.variables = MultiPoly::merge_variables(c.variables, p.used_variables());
    for (auto& p : c.members) p = p.with_variables(c.variables);
    return c;
  }
};

namespace detail {
inline std::vector<Rational> values_on(const MultiPoly& p, const TestSequence& seq, std::size_t t) {
  if (t > seq.t && !seq.points.empty())
    throw PreconditionError("class has " + std::to_string(t) + " variables, points have " + std::to_string(seq.t));
  std::vector<Rational> out;
  out.reserve(seq.points.size());
  for (const auto& pt : seq.points) out.push_back(p.evaluate(std::span<const Rational>(pt.data(), t)));
  return out;
}

struct ValuesHash {
  std::size_t operator()(const std::vector<Rational>& v) const {
    std::size_t h = v.size();
    for (const auto& x : v) h = h * 1000003u ^ std::hash<std::string>{}(x.str());
    return h;
  }
};
}  // namespace detail

struct CorrectTestResult {
  bool ok = true;
  std::optional<std::size_t> witness;  // index of a nonzero member vanishing on every point
};

inline CorrectTestResult is_correct_test_sequence(const TestSequence& seq, const PolyClass& cls) {
  const std::size_t t = cls.variables.size();
  if (t > seq.t && !seq.points.empty())
    throw PreconditionError("class has " + std::to_string(t) + " variables, points have " + std::to_string(seq.t));
  for (std::size_t k = 0; k < cls.members.size(); ++k) {
    const auto& f = cls.members[k];
    if (f.is_zero()) continue;
    bool all_zero = true;
    for (const auto& pt : seq.points)
      if (!f.evaluate(std::span<const Rational>(pt.data(), t)).is_zero()) {
        all_zero = false;
        break;
      }
    if (all_zero) return {false, k};
  }
  return {};
}

struct IdentificationResult {
  bool ok = true;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // distinct members with equal values
};

inline IdentificationResult is_identification_sequence(const TestSequence& seq, const PolyClass& cls) {
  std::unordered_map<std::vector<Rational>, std::size_t, detail::ValuesHash> seen;
  for (std::size_t k = 0; k < cls.members.size(); ++k) {
    auto v = detail::values_on(cls.members[k], seq, cls.variables.size());
    auto [it, inserted] = seen.emplace(std::move(v), k);
    if (!inserted && !(cls.members[it->second] == cls.members[k])) return {false, std::make_pair(it->second, k)};
  }
  return {};
}

struct PitVerdict {
  bool zero = true;
  std::optional<std::size_t> witness;  // first point index with a nonzero value
  Rational value;
};

/// Identity test of output `output_index` by evaluation on the sequence.
inline PitVerdict pit(const Slp& f, const TestSequence& seq, std::size_t output_index = 0) {
  if (!f.params.empty()) throw PreconditionError("pit: parameters must be specialized first");
  if (f.vars.size() != seq.t && !seq.points.empty())
    throw PreconditionError("pit: program has " + std::to_string(f.vars.size()) + " variables, points have " +
                            std::to_string(seq.t));
  if (output_index >= f.outputs.size()) throw PreconditionError("pit: output index out of range");
  const RationalField q;
  for (std::size_t i = 0; i < seq.points.size(); ++i) {
    auto v = evaluate(f, q, std::span<const Rational>(), std::span<const Rational>(seq.points[i]));
    if (!v[output_index].is_zero()) return {false, i, v[output_index]};
  }
  return {};
}

struct ProbeEntry {
  std::string name;
  SequenceKind kind = SequenceKind::Identification;
  PolyClass cls;
};

struct ProbeResult {
  std::string name;
  SequenceKind kind;
  bool ok;
  std::string detail;
};

/// One sequence checked against several enumerated classes.
inline std::vector<ProbeResult> universality_probe(const TestSequence& seq, const std::vector<ProbeEntry>& entries) {
  std::vector<ProbeResult> out;
  for (const auto& e : entries) {
    ProbeResult r{e.name, e.kind, true, ""};
    if (e.kind == SequenceKind::CorrectTest) {
      auto c = is_correct_test_sequence(seq, e.cls);
      r.ok = c.ok;
      if (c.witness) r.detail = "vanishes everywhere: " + e.cls.members[*c.witness].str();
    } else {
      auto c = is_identification_sequence(seq, e.cls);
      r.ok = c.ok;
      if (c.witness)
        r.detail = "not separated: " + e.cls.members[c.witness->first].str() + " vs " +
                   e.cls.members[c.witness->second].str();
    }
    out.push_back(std::move(r));
  }
  return out;
}

/// {a*Y + b : a, b in [lo, hi]} in the variable `var`.
inline PolyClass affine_class(long lo, long hi, const std::string& var = "Y") {
  std::vector<MultiPoly> members;
  for (long a = lo; a <= hi; ++a)
    for (long b = lo; b <= hi; ++b) {
      MultiPoly p({var});
      p.add_term({1}, Rational(a));
      p.add_term({0}, Rational(b));
      members.push_back(std::move(p));
    }
  return PolyClass::of(std::move(members), {var});
}

}  // namespace elimkit
