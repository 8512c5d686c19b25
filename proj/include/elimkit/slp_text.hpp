#pragma once

// Line-based text format:
//
//   slp v1
//   param U
//   var Y
//   t0 = mul Y Y
//   t1 = const -3/4
//   output t0 [=0|!=0]
//
// '#' starts a comment. Operands name a previously defined id, parameter or
// variable; all names share one namespace.

#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "elimkit/errors.hpp"
#include "elimkit/slp.hpp"

namespace elimkit {

namespace detail {

inline std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.emplace_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline const char* opcode_name(OpCode op) {
  switch (op) {
    case OpCode::Add: return "add";
    case OpCode::Sub: return "sub";
    case OpCode::Mul: return "mul";
    case OpCode::Div: return "div";
    case OpCode::Const: return "const";
    case OpCode::Param: return "param";
    case OpCode::Var: return "var";
  }
  return "?";
}

}  // namespace detail

inline Slp parse_slp(std::string_view text) {
  Slp slp;
  std::unordered_map<std::string, std::size_t> names;
  bool header = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto tok = detail::split_ws(line);
    if (tok.empty()) {
      if (end == text.size()) break;
      continue;
    }
    auto fail = [&](const std::string& reason) { return ParseError(line_no, reason); };
    if (!header) {
      if (tok.size() != 2 || tok[0] != "slp" || tok[1] != "v1") throw fail("expected header 'slp v1'");
      header = true;
      continue;
    }
    auto define = [&](const std::string& name) {
      if (!is_identifier(name)) throw fail("invalid identifier '" + name + "'");
      if (!names.emplace(name, slp.nodes.size()).second) throw fail("duplicate id '" + name + "'");
    };
    auto operand = [&](const std::string& name) {
      auto it = names.find(name);
      if (it == names.end()) throw fail("unknown operand '" + name + "'");
      return it->second;
    };
    if (tok[0] == "param" || tok[0] == "var") {
      if (tok.size() != 2) throw fail("expected '" + tok[0] + " <name>'");
      define(tok[1]);
      Instruction n;
      auto& list = tok[0] == "param" ? slp.params : slp.vars;
      n.op = tok[0] == "param" ? OpCode::Param : OpCode::Var;
      n.lhs = list.size();
      n.id = tok[1];
      list.push_back(tok[1]);
      slp.nodes.push_back(std::move(n));
    } else if (tok[0] == "output") {
      if (tok.size() < 2 || tok.size() > 3) throw fail("expected 'output <id> [=0|!=0]'");
      OutputSpec o{operand(tok[1]), SignMark::None};
      if (tok.size() == 3) {
        if (tok[2] == "=0") o.mark = SignMark::Zero;
        else if (tok[2] == "!=0") o.mark = SignMark::NonZero;
        else throw fail("unknown sign mark '" + tok[2] + "'");
      }
      slp.outputs.push_back(o);
    } else {
      if (tok.size() < 3 || tok[1] != "=") throw fail("expected '<id> = <op> ...'");
      Instruction n;
      const std::string& op = tok[2];
      if (op == "const") {
        if (tok.size() != 4) throw fail("expected '<id> = const <rational>'");
        n.op = OpCode::Const;
        try {
          n.value = Rational::parse(tok[3]);
        } catch (const Error& e) {
          throw fail(e.what());
        }
      } else {
        if (op == "add") n.op = OpCode::Add;
        else if (op == "sub") n.op = OpCode::Sub;
        else if (op == "mul") n.op = OpCode::Mul;
        else if (op == "div") n.op = OpCode::Div;
        else throw fail("unknown opcode '" + op + "'");
        if (tok.size() != 5) throw fail("expected two operands for '" + op + "'");
        n.lhs = operand(tok[3]);
        n.rhs = operand(tok[4]);
      }
      define(tok[0]);
      n.id = tok[0];
      slp.nodes.push_back(std::move(n));
    }
    if (end == text.size()) break;
  }
  if (!header) throw ParseError(line_no, "missing header 'slp v1'");
  return slp;
}

inline std::string serialize_slp(const Slp& slp) {
  std::vector<std::string> ids(slp.nodes.size());
  std::size_t next_param = 0, next_var = 0;
  for (std::size_t i = 0; i < slp.nodes.size(); ++i) {
    const auto& n = slp.nodes[i];
    if (n.op == OpCode::Param) {
      if (n.lhs != next_param++) throw PreconditionError("serialize_slp: parameters must appear in declaration order");
      ids[i] = slp.params.at(n.lhs);
    } else if (n.op == OpCode::Var) {
      if (n.lhs != next_var++) throw PreconditionError("serialize_slp: variables must appear in declaration order");
      ids[i] = slp.vars.at(n.lhs);
    } else {
      ids[i] = n.id.empty() ? "n" + std::to_string(i) : n.id;
    }
  }
  if (next_param != slp.params.size() || next_var != slp.vars.size())
    throw PreconditionError("serialize_slp: every input needs exactly one input node");
  std::ostringstream os;
  os << "slp v1\n";
  for (std::size_t i = 0; i < slp.nodes.size(); ++i) {
    const auto& n = slp.nodes[i];
    switch (n.op) {
      case OpCode::Param: os << "param " << ids[i] << '\n'; break;
      case OpCode::Var: os << "var " << ids[i] << '\n'; break;
      case OpCode::Const: os << ids[i] << " = const " << n.value.str() << '\n'; break;
      default:
        os << ids[i] << " = " << detail::opcode_name(n.op) << ' ' << ids.at(n.lhs) << ' ' << ids.at(n.rhs) << '\n';
    }
  }
  for (const auto& o : slp.outputs) {
    os << "output " << ids.at(o.node);
    if (o.mark == SignMark::Zero) os << " =0";
    if (o.mark == SignMark::NonZero) os << " !=0";
    os << '\n';
  }
  return os.str();
}

}  // namespace elimkit
