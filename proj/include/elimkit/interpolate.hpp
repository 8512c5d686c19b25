#pragma once

#include <string>
#include <vector>

#include "elimkit/errors.hpp"
#include "elimkit/linalg.hpp"
#include "elimkit/multipoly.hpp"

namespace elimkit {

using Point = std::vector<Rational>;

/// Monomials over a fixed variable list.
struct MonomialBasis {
  std::vector<std::string> variables;
  std::vector<Exponents> monomials;

  std::size_t size() const { return monomials.size(); }

  /// All monomials of total degree <= deg, graded, in the given variables.
  static MonomialBasis total_degree(std::vector<std::string> vars, std::uint32_t deg) {
    MonomialBasis b{std::move(vars), {}};
    Exponents e(b.variables.size(), 0);
    if (e.empty()) {
      b.monomials.push_back(e);
      return b;
    }
    for (std::uint32_t d = 0; d <= deg; ++d) {
      // compositions of d into |vars| parts
      auto rec = [&](auto&& self, std::size_t i, std::uint32_t left) -> void {
        if (i + 1 == e.size()) {
          e[i] = left;
          b.monomials.push_back(e);
          e[i] = 0;
          return;
        }
        for (std::uint32_t k = left + 1; k-- > 0;) {
          e[i] = k;
          self(self, i + 1, left - k);
        }
        e[i] = 0;
      };
      rec(rec, 0, d);
      std::fill(e.begin(), e.end(), 0);
    }
    return b;
  }

  /// Reads each polynomial as a single monomial with coefficient 1.
  static MonomialBasis from_polys(const std::vector<MultiPoly>& monos, std::vector<std::string> vars) {
    MonomialBasis b{std::move(vars), {}};
    for (const auto& m : monos) {
      MultiPoly aligned = m.with_variables(b.variables);
      if (aligned.size() != 1 || aligned.terms().begin()->second != Rational(1))
        throw PreconditionError("basis element is not a monomial: " + m.str());
      b.monomials.push_back(aligned.terms().begin()->first);
    }
    return b;
  }

  Rational evaluate(std::size_t k, const Point& x) const {
    Rational v(1);
    for (std::size_t i = 0; i < x.size(); ++i)
      if (monomials[k][i] != 0) v *= pow(x[i], monomials[k][i]);
    return v;
  }

  MultiPoly combine(const std::vector<Rational>& coeffs) const {
    if (coeffs.size() != monomials.size()) throw PreconditionError("basis/coefficient length mismatch");
    MultiPoly p(variables);
    for (std::size_t k = 0; k < coeffs.size(); ++k) p.add_term(monomials[k], coeffs[k]);
    return p;
  }
};

/// Coefficients c with sum_k c_k m_k(points[j]) = values[j] for every j.
inline std::vector<Rational> interpolate(const std::vector<Point>& points, const std::vector<Rational>& values,
                                         const MonomialBasis& basis) {
  if (points.size() != values.size()) throw PreconditionError("interpolate: points/values length mismatch");
  if (points.size() < basis.size()) throw PreconditionError("interpolate: fewer points than basis elements");
  for (const auto& p : points)
    if (p.size() != basis.variables.size()) throw PreconditionError("interpolate: point dimension mismatch");
  if (basis.size() == 0) {
    for (const auto& v : values)
      if (!v.is_zero()) throw NotInSpan();
    return {};
  }
  Matrix<Rational> a(points.size(), basis.size());
  for (std::size_t j = 0; j < points.size(); ++j)
    for (std::size_t k = 0; k < basis.size(); ++k) a(j, k) = basis.evaluate(k, points[j]);
  return solve_exact(a, values);
}

}  // namespace elimkit
