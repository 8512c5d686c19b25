#pragma once

// Straight-line programs: essentially division-free arithmetic circuits over
// parameters (the coefficient field K) and variables.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "elimkit/errors.hpp"
#include "elimkit/rational.hpp"
#include "elimkit/rings.hpp"

namespace elimkit {

enum class OpCode { Param, Var, Const, Add, Sub, Mul, Div };

inline bool is_arithmetic(OpCode op) {
  return op == OpCode::Add || op == OpCode::Sub || op == OpCode::Mul || op == OpCode::Div;
}

struct Instruction {
  OpCode op = OpCode::Const;
  std::size_t lhs = 0;  // input index for Param/Var, first operand otherwise
  std::size_t rhs = 0;
  Rational value;       // Const only
  std::string id;

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

enum class SignMark { None, Zero, NonZero };

struct OutputSpec {
  std::size_t node = 0;
  SignMark mark = SignMark::None;
  friend bool operator==(const OutputSpec&, const OutputSpec&) = default;
};

struct Slp {
  std::vector<std::string> params;
  std::vector<std::string> vars;
  std::vector<Instruction> nodes;
  std::vector<OutputSpec> outputs;

  friend bool operator==(const Slp&, const Slp&) = default;
};

enum class DivisionMode {
  Essential,  // divisors may depend on parameters only
  Total,      // no division nodes at all
};

struct ValidationReport {
  bool ok = true;
  std::optional<std::size_t> node;  // first offending node (or output slot for output errors)
  std::string reason;

  explicit operator bool() const noexcept { return ok; }
};

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  auto head = [](char c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_'; };
  if (!head(s[0])) return false;
  return std::all_of(s.begin() + 1, s.end(), [&](char c) { return head(c) || (c >= '0' && c <= '9'); });
}

/// Which nodes depend on variables / parameters.
struct Dependence {
  std::vector<bool> on_var;
  std::vector<bool> on_param;

  bool constant(std::size_t i) const { return !on_var[i] && !on_param[i]; }
};

inline Dependence dependence(const Slp& slp) {
  Dependence d{std::vector<bool>(slp.nodes.size()), std::vector<bool>(slp.nodes.size())};
  for (std::size_t i = 0; i < slp.nodes.size(); ++i) {
    const auto& n = slp.nodes[i];
    switch (n.op) {
      case OpCode::Param: d.on_param[i] = true; break;
      case OpCode::Var: d.on_var[i] = true; break;
      case OpCode::Const: break;
      default:
        d.on_var[i] = d.on_var[n.lhs] || d.on_var[n.rhs];
        d.on_param[i] = d.on_param[n.lhs] || d.on_param[n.rhs];
    }
  }
  return d;
}

inline ValidationReport validate(const Slp& slp, DivisionMode mode = DivisionMode::Essential) {
  auto fail = [](std::size_t node, std::string reason) { return ValidationReport{false, node, std::move(reason)}; };
  std::unordered_set<std::string> ids;
  std::vector<bool> on_var(slp.nodes.size(), false);
  for (std::size_t i = 0; i < slp.nodes.size(); ++i) {
    const auto& n = slp.nodes[i];
    if (!n.id.empty() && !ids.insert(n.id).second) return fail(i, "duplicate id '" + n.id + "'");
    switch (n.op) {
      case OpCode::Param:
        if (n.lhs >= slp.params.size()) return fail(i, "parameter index out of range");
        break;
      case OpCode::Var:
        if (n.lhs >= slp.vars.size()) return fail(i, "variable index out of range");
        on_var[i] = true;
        break;
      case OpCode::Const: break;
      default:
        if (n.lhs >= i || n.rhs >= i) return fail(i, "forward reference");
        if (n.op == OpCode::Div) {
          if (mode == DivisionMode::Total) return fail(i, "division in totally division-free mode");
          if (on_var[n.rhs]) return fail(i, "divisor depends on variable");
        }
        on_var[i] = on_var[n.lhs] || on_var[n.rhs];
    }
  }
  for (std::size_t k = 0; k < slp.outputs.size(); ++k)
    if (slp.outputs[k].node >= slp.nodes.size()) return fail(k, "output index out of range");
  return {};
}

/// Incremental construction of well-formed programs. Inputs must be declared
/// before the first instruction so they occupy the leading node slots.
class SlpBuilder {
 public:
  using Ref = std::size_t;

  Ref param(const std::string& name) { return input(OpCode::Param, name, slp_.params); }
  Ref var(const std::string& name) { return input(OpCode::Var, name, slp_.vars); }

  Ref constant(const Rational& value) {
    Instruction n;
    n.op = OpCode::Const;
    n.value = value;
    return push(std::move(n));
  }
  Ref add(Ref a, Ref b) { return binary(OpCode::Add, a, b); }
  Ref sub(Ref a, Ref b) { return binary(OpCode::Sub, a, b); }
  Ref mul(Ref a, Ref b) { return binary(OpCode::Mul, a, b); }
  Ref div(Ref a, Ref b) { return binary(OpCode::Div, a, b); }

  void output(Ref node, SignMark mark = SignMark::None) {
    check(node);
    slp_.outputs.push_back({node, mark});
  }

  std::size_t size() const noexcept { return slp_.nodes.size(); }
  Slp build() const { return slp_; }

 private:
  Ref input(OpCode op, const std::string& name, std::vector<std::string>& list) {
    if (instructions_ > 0) throw PreconditionError("SlpBuilder: declare inputs before instructions");
    if (!is_identifier(name)) throw PreconditionError("SlpBuilder: invalid identifier '" + name + "'");
    if (!names_.insert(name).second) throw PreconditionError("SlpBuilder: duplicate name '" + name + "'");
    Instruction n;
    n.op = op;
    n.lhs = list.size();
    n.id = name;
    list.push_back(name);
    slp_.nodes.push_back(std::move(n));
    return slp_.nodes.size() - 1;
  }
  Ref binary(OpCode op, Ref a, Ref b) {
    check(a);
    check(b);
    Instruction n;
    n.op = op;
    n.lhs = a;
    n.rhs = b;
    return push(std::move(n));
  }
  Ref push(Instruction n) {
    n.id = "t" + std::to_string(instructions_++);
    while (names_.count(n.id)) n.id = "t" + std::to_string(instructions_++);
    names_.insert(n.id);
    slp_.nodes.push_back(std::move(n));
    return slp_.nodes.size() - 1;
  }
  void check(Ref r) const {
    if (r >= slp_.nodes.size()) throw PreconditionError("SlpBuilder: unknown node reference");
  }

  Slp slp_;
  std::unordered_set<std::string> names_;
  std::size_t instructions_ = 0;
};

/// Values of every node under the given input assignment (positional).
template <EvaluationRing R>
std::vector<typename R::Element> evaluate_nodes(const Slp& slp, const R& ring,
                                                std::span<const typename R::Element> params,
                                                std::span<const typename R::Element> vars) {
  if (params.size() != slp.params.size() || vars.size() != slp.vars.size())
    throw PreconditionError("evaluate: expected " + std::to_string(slp.params.size()) + " parameter and " +
                            std::to_string(slp.vars.size()) + " variable values");
  std::vector<typename R::Element> v;
  v.reserve(slp.nodes.size());
  for (std::size_t i = 0; i < slp.nodes.size(); ++i) {
    const auto& n = slp.nodes[i];
    if (is_arithmetic(n.op) && (n.lhs >= i || n.rhs >= i)) throw PreconditionError("evaluate: forward reference");
    switch (n.op) {
      case OpCode::Param: v.push_back(params[n.lhs]); break;
      case OpCode::Var: v.push_back(vars[n.lhs]); break;
      case OpCode::Const:
        try {
          v.push_back(ring.from_rational(n.value));
        } catch (const DivisionByZero&) {
          throw PoleError(i);
        }
        break;
      case OpCode::Add: v.push_back(ring.add(v[n.lhs], v[n.rhs])); break;
      case OpCode::Sub: v.push_back(ring.sub(v[n.lhs], v[n.rhs])); break;
      case OpCode::Mul: v.push_back(ring.mul(v[n.lhs], v[n.rhs])); break;
      case OpCode::Div:
        if (ring.is_zero(v[n.rhs])) throw PoleError(i);
        v.push_back(ring.div(v[n.lhs], v[n.rhs]));
        break;
    }
  }
  return v;
}

template <EvaluationRing R>
std::vector<typename R::Element> evaluate(const Slp& slp, const R& ring, std::span<const typename R::Element> params,
                                          std::span<const typename R::Element> vars) {
  auto v = evaluate_nodes(slp, ring, params, vars);
  std::vector<typename R::Element> out;
  out.reserve(slp.outputs.size());
  for (const auto& o : slp.outputs) out.push_back(v.at(o.node));
  return out;
}

template <EvaluationRing R>
std::vector<typename R::Element> evaluate(const Slp& slp, const R& ring,
                                          const std::map<std::string, typename R::Element>& param_values,
                                          const std::map<std::string, typename R::Element>& var_values) {
  auto collect = [](const std::vector<std::string>& names, const auto& values, const char* kind) {
    std::vector<typename R::Element> out;
    out.reserve(names.size());
    for (const auto& name : names) {
      auto it = values.find(name);
      if (it == values.end()) throw PreconditionError(std::string("evaluate: unassigned ") + kind + " '" + name + "'");
      out.push_back(it->second);
    }
    return out;
  };
  auto p = collect(slp.params, param_values, "parameter");
  auto x = collect(slp.vars, var_values, "variable");
  return evaluate(slp, ring, std::span<const typename R::Element>(p), std::span<const typename R::Element>(x));
}

/// Rational evaluation with a single name -> value map covering params and vars.
inline std::vector<Rational> evaluate_at(const Slp& slp, const std::map<std::string, Rational>& at) {
  return evaluate(slp, RationalField{}, at, at);
}

struct SlpProfile {
  std::size_t size_over_params = 0;   // essential multiplications over K
  std::size_t size_over_scalars = 0;  // non-scalar operations over the ground field
  std::size_t total_ops = 0;
  std::size_t outputs = 0;
  std::vector<std::uint64_t> var_degree_bound;
  std::vector<std::uint64_t> param_degree_bound;
};

namespace detail {
inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
}
}  // namespace detail

/// Sizes and syntactic degree bounds of a valid program, measured as written.
inline SlpProfile profile(const Slp& slp) {
  const auto dep = dependence(slp);
  SlpProfile p;
  std::vector<std::uint64_t> vdeg(slp.nodes.size(), 0), pdeg(slp.nodes.size(), 0);
  for (std::size_t i = 0; i < slp.nodes.size(); ++i) {
    const auto& n = slp.nodes[i];
    switch (n.op) {
      case OpCode::Param: pdeg[i] = 1; break;
      case OpCode::Var: vdeg[i] = 1; break;
      case OpCode::Const: break;
      case OpCode::Add:
      case OpCode::Sub:
        ++p.total_ops;
        vdeg[i] = std::max(vdeg[n.lhs], vdeg[n.rhs]);
        pdeg[i] = std::max(pdeg[n.lhs], pdeg[n.rhs]);
        break;
      case OpCode::Mul:
        ++p.total_ops;
        vdeg[i] = detail::sat_add(vdeg[n.lhs], vdeg[n.rhs]);
        pdeg[i] = detail::sat_add(pdeg[n.lhs], pdeg[n.rhs]);
        if (dep.on_var[n.lhs] && dep.on_var[n.rhs]) ++p.size_over_params;
        if (!dep.constant(n.lhs) && !dep.constant(n.rhs)) ++p.size_over_scalars;
        break;
      case OpCode::Div:
        ++p.total_ops;
        vdeg[i] = vdeg[n.lhs];
        pdeg[i] = pdeg[n.lhs];
        if (!dep.constant(n.rhs)) ++p.size_over_scalars;
        break;
    }
  }
  p.outputs = slp.outputs.size();
  for (const auto& o : slp.outputs) {
    p.var_degree_bound.push_back(vdeg.at(o.node));
    p.param_degree_bound.push_back(pdeg.at(o.node));
  }
  return p;
}

/// Size m = L^2 + (2t-1)L + q(L+t+1) of the rearranged circuit for nonscalar
/// size L, t variables and q outputs.
inline Integer rearranged_size(std::uint64_t L, std::uint64_t t, std::uint64_t q) {
  Integer l(static_cast<unsigned long>(L)), tt(static_cast<unsigned long>(t)), qq(static_cast<unsigned long>(q));
  return l * l + (2 * tt - 1) * l + qq * (l + tt + 1);
}

}  // namespace elimkit
