#pragma once

#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "elimkit/errors.hpp"
#include "elimkit/multipoly.hpp"
#include "elimkit/slp.hpp"

namespace elimkit {

namespace detail {
inline std::optional<std::size_t> budget_from_env() {
  if (const char* s = std::getenv("ELIMKIT_BUDGET")) {
    try {
      return static_cast<std::size_t>(std::stoull(s));
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}
}  // namespace detail

/// Maximum term count of an expansion; ELIMKIT_BUDGET overrides.
inline std::size_t default_term_budget() { return detail::budget_from_env().value_or(2'000'000); }

/// Cap on enumerated combinations in brute-force searches; ELIMKIT_BUDGET overrides.
inline std::size_t default_combinatorial_budget() { return detail::budget_from_env().value_or(10'000'000); }

/// Exact expansion of one output into a MultiPoly over params followed by vars.
/// Only divisions by constants are supported symbolically.
inline MultiPoly expand(const Slp& slp, std::size_t output_index = 0, std::optional<std::size_t> budget = std::nullopt) {
  if (output_index >= slp.outputs.size()) throw PreconditionError("expand: output index out of range");
  if (auto report = validate(slp); !report)
    throw PreconditionError("expand: invalid program: " + report.reason);
  const std::size_t limit = budget.value_or(default_term_budget());
  std::vector<std::string> order = slp.params;
  order.insert(order.end(), slp.vars.begin(), slp.vars.end());

  const std::size_t root = slp.outputs[output_index].node;
  // Nodes reachable from the output, and the last node reading each value.
  std::vector<bool> needed(slp.nodes.size(), false);
  needed[root] = true;
  std::vector<std::size_t> last_use(slp.nodes.size(), 0);
  for (std::size_t i = slp.nodes.size(); i-- > 0;) {
    if (!needed[i] || !is_arithmetic(slp.nodes[i].op)) continue;
    for (auto operand : {slp.nodes[i].lhs, slp.nodes[i].rhs}) {
      needed[operand] = true;
      last_use[operand] = std::max(last_use[operand], i);
    }
  }

  std::vector<std::optional<MultiPoly>> value(slp.nodes.size());
  for (std::size_t i = 0; i <= root; ++i) {
    if (!needed[i]) continue;
    const auto& n = slp.nodes[i];
    MultiPoly r(order);
    switch (n.op) {
      case OpCode::Param: r = MultiPoly::variable(slp.params[n.lhs], order); break;
      case OpCode::Var: r = MultiPoly::variable(slp.vars[n.lhs], order); break;
      case OpCode::Const: r = MultiPoly::constant(n.value, order); break;
      case OpCode::Add: r = *value[n.lhs] + *value[n.rhs]; break;
      case OpCode::Sub: r = *value[n.lhs] - *value[n.rhs]; break;
      case OpCode::Mul:
        if (value[n.lhs]->size() * value[n.rhs]->size() > limit * 64)
          throw BudgetExceeded("expansion too large", value[n.lhs]->size() * value[n.rhs]->size());
        r = *value[n.lhs] * *value[n.rhs];
        break;
      case OpCode::Div: {
        const MultiPoly& d = *value[n.rhs];
        if (!d.is_constant()) throw UnsupportedDivision(i);
        if (d.is_zero()) throw PoleError(i);
        r = value[n.lhs]->scaled(d.constant_term().inv());
        break;
      }
    }
    if (r.size() > limit) throw BudgetExceeded("expansion too large", r.size());
    value[i] = std::move(r);
    if (is_arithmetic(n.op))
      for (auto operand : {n.lhs, n.rhs})
        if (last_use[operand] == i && operand != root) value[operand].reset();
  }
  return *value[root];
}

}  // namespace elimkit
