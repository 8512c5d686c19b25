#pragma once

#include <memory>
#include <string>
#include <vector>

#include "elimkit/errors.hpp"
#include "elimkit/interpolate.hpp"
#include "elimkit/multipoly.hpp"
#include "elimkit/sequences.hpp"
#include "elimkit/slp.hpp"

namespace elimkit {

/// The value vector (F(g_1), ..., F(g_m)) tied to the sequence that produced it.
struct ValueCode {
  std::shared_ptr<const TestSequence> sequence;
  std::string gamma_id;
  std::vector<Rational> values;
};

inline std::shared_ptr<const TestSequence> share(TestSequence s) {
  return std::make_shared<const TestSequence>(std::move(s));
}

/// Encodes a polynomial whose variables are read, in order, as point coordinates.
inline ValueCode encode(const MultiPoly& f, const std::shared_ptr<const TestSequence>& gamma,
                        std::vector<std::string> variables = {}) {
  if (variables.empty()) variables = f.used_variables();
  if (variables.size() > gamma->t && !gamma->points.empty())
    throw PreconditionError("encode: polynomial has more variables than the points have coordinates");
  const MultiPoly g = f.with_variables(variables);
  ValueCode c{gamma, gamma->id(), {}};
  c.values.reserve(gamma->points.size());
  for (const auto& pt : gamma->points) c.values.push_back(g.evaluate(std::span<const Rational>(pt.data(), variables.size())));
  return c;
}

/// Encodes output `output_index` of a parameter-free program.
inline ValueCode encode(const Slp& f, const std::shared_ptr<const TestSequence>& gamma, std::size_t output_index = 0) {
  if (!f.params.empty()) throw PreconditionError("encode: parameters must be specialized first");
  if (f.vars.size() != gamma->t && !gamma->points.empty())
    throw PreconditionError("encode: variable count differs from point dimension");
  if (output_index >= f.outputs.size()) throw PreconditionError("encode: output index out of range");
  ValueCode c{gamma, gamma->id(), {}};
  const RationalField q;
  for (const auto& pt : gamma->points)
    c.values.push_back(evaluate(f, q, std::span<const Rational>(), std::span<const Rational>(pt))[output_index]);
  return c;
}

/// The basis-span polynomial with the given values.
inline MultiPoly decode(const ValueCode& code, const MonomialBasis& basis) {
  if (!code.sequence) throw PreconditionError("decode: code carries no sequence");
  if (basis.size() > code.values.size()) throw PreconditionError("decode: basis larger than the code length");
  if (basis.variables.size() > code.sequence->t && !code.sequence->points.empty())
    throw PreconditionError("decode: basis has more variables than the points have coordinates");
  std::vector<Point> pts;
  pts.reserve(code.sequence->points.size());
  for (const auto& p : code.sequence->points) pts.emplace_back(p.begin(), p.begin() + basis.variables.size());
  return basis.combine(interpolate(pts, code.values, basis));
}

/// Componentwise equality; codes over different sequences are rejected.
inline bool code_eq(const ValueCode& a, const ValueCode& b) {
  if (a.gamma_id != b.gamma_id) throw PreconditionError("code_eq: codes belong to different sequences");
  return a.values == b.values;
}

/// Whether encoding is injective on the enumerated class.
inline bool injectivity_check(const std::shared_ptr<const TestSequence>& gamma, const PolyClass& cls) {
  std::vector<ValueCode> codes;
  codes.reserve(cls.members.size());
  for (const auto& f : cls.members) codes.push_back(encode(f, gamma, cls.variables));
  for (std::size_t i = 0; i < codes.size(); ++i)
    for (std::size_t j = i + 1; j < codes.size(); ++j)
      if (code_eq(codes[i], codes[j]) && !(cls.members[i] == cls.members[j])) return false;
  return true;
}

}  // namespace elimkit
