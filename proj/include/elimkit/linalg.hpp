#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "elimkit/errors.hpp"
#include "elimkit/rational.hpp"
#include "elimkit/rings.hpp"

namespace elimkit {

/// Dense row-major matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T()) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap(data_[a * cols_ + c], data_[b * cols_ + c]);
  }

  Matrix submatrix(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    Matrix out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = (*this)(rows[i], cols[j]);
    return out;
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

struct Pivot {
  std::size_t row;  // row index in the input matrix
  std::size_t col;
  friend bool operator==(const Pivot&, const Pivot&) = default;
};

struct RankResult {
  std::size_t rank = 0;
  std::vector<Pivot> pivots;  // one per rank step; the pivot rows/cols select a nonsingular minor
};

/// Row echelon reduction over a field; returns rank and pivot positions.
template <EvaluationRing R>
RankResult field_rank(const R& ring, Matrix<typename R::Element> m) {
  RankResult out;
  std::vector<std::size_t> origin(m.rows());
  for (std::size_t i = 0; i < origin.size(); ++i) origin[i] = i;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && ring.is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    std::swap(origin[p], origin[r]);
    const auto inv = ring.inv(m(r, c));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (ring.is_zero(m(i, c))) continue;
      const auto f = ring.mul(m(i, c), inv);
      for (std::size_t j = c + 1; j < m.cols(); ++j) m(i, j) = ring.sub(m(i, j), ring.mul(f, m(r, j)));
      m(i, c) = ring.zero();
    }
    out.pivots.push_back({origin[r], c});
    ++r;
  }
  out.rank = r;
  return out;
}

/// Fraction-free (Bareiss) elimination: every intermediate entry is a minor of
/// the input, so divisions are exact and coefficient growth stays polynomial.
inline RankResult bareiss_rank(Matrix<Integer> m) {
  RankResult out;
  std::vector<std::size_t> origin(m.rows());
  for (std::size_t i = 0; i < origin.size(); ++i) origin[i] = i;
  Integer prev = 1;
  Integer t1, t2;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    m.swap_rows(p, r);
    std::swap(origin[p], origin[r]);
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      for (std::size_t j = c + 1; j < m.cols(); ++j) {
        mpz_mul(t1.get_mpz_t(), m(r, c).get_mpz_t(), m(i, j).get_mpz_t());
        mpz_mul(t2.get_mpz_t(), m(i, c).get_mpz_t(), m(r, j).get_mpz_t());
        mpz_sub(t1.get_mpz_t(), t1.get_mpz_t(), t2.get_mpz_t());
        mpz_divexact(m(i, j).get_mpz_t(), t1.get_mpz_t(), prev.get_mpz_t());
      }
      m(i, c) = 0;
    }
    prev = m(r, c);
    out.pivots.push_back({origin[r], c});
    ++r;
  }
  out.rank = r;
  return out;
}

/// Scales each row by the lcm of its denominators; the rank is unchanged.
inline Matrix<Integer> clear_denominators(const Matrix<Rational>& m) {
  Matrix<Integer> out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = 1;
    for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).den().get_mpz_t());
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).num() * (l / m(i, j).den());
  }
  return out;
}

inline RankResult rational_rank(const Matrix<Rational>& m) { return bareiss_rank(clear_denominators(m)); }

/// Solves A x = b exactly for A with rows >= cols. Throws SingularSystem when
/// A lacks full column rank and NotInSpan when the system is inconsistent.
inline std::vector<Rational> solve_exact(const Matrix<Rational>& a, const std::vector<Rational>& b) {
  if (b.size() != a.rows()) throw PreconditionError("solve_exact: right-hand side length mismatch");
  const std::size_t n = a.cols();
  Matrix<Rational> m(a.rows(), n + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) m(i, j) = a(i, j);
    m(i, n) = b[i];
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c).is_zero()) ++p;
    if (p == m.rows()) throw SingularSystem();
    m.swap_rows(p, r);
    const Rational inv = m(r, c).inv();
    for (std::size_t j = c; j <= n; ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      const Rational f = m(i, c);
      for (std::size_t j = c; j <= n; ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  for (std::size_t i = n; i < m.rows(); ++i)
    if (!m(i, n).is_zero()) throw NotInSpan();
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = m(i, n);
  return x;
}

}  // namespace elimkit
