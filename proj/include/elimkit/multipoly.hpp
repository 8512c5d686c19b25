#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "elimkit/errors.hpp"
#include "elimkit/random.hpp"
#include "elimkit/rational.hpp"
#include "elimkit/rings.hpp"

namespace elimkit {

using Exponents = std::vector<std::uint32_t>;

struct ExponentsHash {
  std::size_t operator()(const Exponents& e) const noexcept {
    std::uint64_t h = 0x84222325cbf29ce4ULL ^ e.size();
    for (auto x : e) h = splitmix64(h ^ x);
    return static_cast<std::size_t>(h);
  }
};

/// Sparse multivariate polynomial with rational coefficients. Terms map
/// exponent vectors (one entry per variable, in variables() order) to nonzero
/// coefficients. Polynomials over different variable lists combine by name.
class MultiPoly {
 public:
  using TermMap = std::unordered_map<Exponents, Rational, ExponentsHash>;

  MultiPoly() = default;
  explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static MultiPoly constant(const Rational& c, std::vector<std::string> vars = {}) {
    MultiPoly p(std::move(vars));
    p.add_term(Exponents(p.vars_.size(), 0), c);
    return p;
  }

  static MultiPoly variable(const std::string& name, std::vector<std::string> vars = {}) {
    if (std::find(vars.begin(), vars.end(), name) == vars.end()) vars.push_back(name);
    MultiPoly p(std::move(vars));
    Exponents e(p.vars_.size(), 0);
    e[*p.index_of(name)] = 1;
    p.add_term(e, Rational(1));
    return p;
  }

  const std::vector<std::string>& variables() const noexcept { return vars_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return i;
    return std::nullopt;
  }

  bool is_constant() const {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) {
      return std::all_of(t.first.begin(), t.first.end(), [](auto x) { return x == 0; });
    });
  }

  Rational coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  Rational constant_term() const { return coefficient(Exponents(vars_.size(), 0)); }

  void add_term(const Exponents& e, const Rational& c) {
    if (e.size() != vars_.size()) throw PreconditionError("MultiPoly::add_term: exponent length mismatch");
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(e, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Variables actually occurring with a positive exponent, in variables() order.
  std::vector<std::string> used_variables() const {
    std::vector<bool> used(vars_.size(), false);
    for (const auto& [e, c] : terms_)
      for (std::size_t i = 0; i < e.size(); ++i)
        if (e[i]) used[i] = true;
    std::vector<std::string> out;
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (used[i]) out.push_back(vars_[i]);
    return out;
  }

  /// Re-embeds into a new variable order; every used variable must be present.
  MultiPoly with_variables(const std::vector<std::string>& order) const {
    if (order == vars_) return *this;
    std::vector<std::size_t> map(vars_.size());
    std::vector<bool> present(vars_.size(), false);
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      auto it = std::find(order.begin(), order.end(), vars_[i]);
      if (it != order.end()) {
        map[i] = static_cast<std::size_t>(it - order.begin());
        present[i] = true;
      }
    }
    MultiPoly out(order);
    out.terms_.reserve(terms_.size());
    for (const auto& [e, c] : terms_) {
      Exponents f(order.size(), 0);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!present[i]) throw PreconditionError("MultiPoly::with_variables: variable '" + vars_[i] + "' dropped");
        f[map[i]] = e[i];
      }
      out.terms_.emplace(std::move(f), c);
    }
    return out;
  }

  static std::vector<std::string> merge_variables(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<std::string> out = a;
    for (const auto& v : b)
      if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    return out;
  }

  MultiPoly& operator+=(const MultiPoly& o) { return accumulate(o, Rational(1)); }
  MultiPoly& operator-=(const MultiPoly& o) { return accumulate(o, Rational(-1)); }

  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator-(const MultiPoly& a) { return a.scaled(Rational(-1)); }

  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    auto order = merge_variables(a.vars_, b.vars_);
    const MultiPoly x = a.with_variables(order);
    const MultiPoly y = b.with_variables(order);
    MultiPoly out(order);
    out.terms_.reserve(std::min<std::size_t>(x.size() * y.size(), std::size_t{1} << 16));
    Exponents e(order.size());
    for (const auto& [ea, ca] : x.terms_)
      for (const auto& [eb, cb] : y.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        out.add_term(e, ca * cb);
      }
    return out;
  }
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

  MultiPoly scaled(const Rational& c) const {
    MultiPoly out(vars_);
    if (c.is_zero()) return out;
    out.terms_.reserve(terms_.size());
    for (const auto& [e, v] : terms_) out.terms_.emplace(e, v * c);
    return out;
  }

  MultiPoly pow(std::int64_t k) const {
    if (k < 0) throw PreconditionError("MultiPoly::pow: negative exponent");
    MultiPoly result = constant(Rational(1), vars_);
    MultiPoly base = *this;
    auto e = static_cast<std::uint64_t>(k);
    while (e) {
      if (e & 1) result *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return result;
  }

  /// Positional evaluation over any ring; values follow variables() order.
  template <EvaluationRing R>
  typename R::Element evaluate(const R& ring, std::span<const typename R::Element> values) const {
    if (values.size() != vars_.size()) throw PreconditionError("MultiPoly::evaluate: wrong number of values");
    auto acc = ring.zero();
    for (const auto& [e, c] : terms_) {
      auto t = ring.from_rational(c);
      for (std::size_t i = 0; i < e.size(); ++i)
        for (std::uint32_t k = 0; k < e[i]; ++k) t = ring.mul(t, values[i]);
      acc = ring.add(acc, t);
    }
    return acc;
  }

  Rational evaluate(std::span<const Rational> values) const { return evaluate(RationalField{}, values); }

  /// Evaluation by name; every used variable must be assigned.
  Rational evaluate(const std::map<std::string, Rational>& at) const {
    std::vector<Rational> v(vars_.size());
    auto used = used_variables();
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      auto it = at.find(vars_[i]);
      if (it != at.end()) v[i] = it->second;
      else if (std::find(used.begin(), used.end(), vars_[i]) != used.end())
        throw PreconditionError("MultiPoly::evaluate: unassigned variable '" + vars_[i] + "'");
    }
    return evaluate(std::span<const Rational>(v));
  }

  /// Partial specialization: the assigned variables are removed from the result.
  MultiPoly substitute(const std::map<std::string, Rational>& at) const {
    std::vector<std::string> rest;
    std::vector<std::size_t> keep;
    std::vector<std::optional<Rational>> value(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      auto it = at.find(vars_[i]);
      if (it != at.end()) value[i] = it->second;
      else {
        rest.push_back(vars_[i]);
        keep.push_back(i);
      }
    }
    MultiPoly out(rest);
    for (const auto& [e, c] : terms_) {
      Rational coeff = c;
      for (std::size_t i = 0; i < e.size(); ++i)
        if (value[i] && e[i]) coeff *= elimkit::pow(*value[i], e[i]);
      Exponents f(keep.size());
      for (std::size_t k = 0; k < keep.size(); ++k) f[k] = e[keep[k]];
      out.add_term(f, coeff);
    }
    return out;
  }

  /// Substitutes polynomials for variables (variables absent from the map stay).
  MultiPoly compose(const std::map<std::string, MultiPoly>& images) const {
    std::vector<std::string> rest;
    for (const auto& v : vars_)
      if (!images.count(v)) rest.push_back(v);
    MultiPoly out(rest);
    std::vector<std::vector<MultiPoly>> powers(vars_.size());
    for (const auto& [e, c] : terms_) {
      MultiPoly term = constant(c, rest);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        auto it = images.find(vars_[i]);
        if (it == images.end()) {
          term *= variable(vars_[i], rest).pow(e[i]);
          continue;
        }
        auto& cache = powers[i];
        if (cache.empty()) cache.push_back(constant(Rational(1)));
        while (cache.size() <= e[i]) cache.push_back(cache.back() * it->second);
        term *= cache[e[i]];
      }
      out += term;
    }
    return out;
  }

  MultiPoly derivative(const std::string& name) const {
    MultiPoly out(vars_);
    auto idx = index_of(name);
    if (!idx) return out;
    for (const auto& [e, c] : terms_) {
      if (e[*idx] == 0) continue;
      Exponents f = e;
      --f[*idx];
      out.add_term(f, c * Rational(static_cast<long>(e[*idx])));
    }
    return out;
  }

  /// Total degree; -1 for the zero polynomial.
  long degree() const {
    long d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<long>(std::accumulate(e.begin(), e.end(), 0UL)));
    return d;
  }

  long degree_in(std::string_view name) const {
    auto idx = index_of(name);
    if (is_zero()) return -1;
    if (!idx) return 0;
    long d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, static_cast<long>(e[*idx]));
    return d;
  }

  /// Drops every term whose exponent in `name` is at least `bound` (reduction mod name^bound).
  MultiPoly truncate(std::string_view name, std::uint32_t bound) const {
    auto idx = index_of(name);
    if (!idx) return bound == 0 ? MultiPoly(vars_) : *this;
    MultiPoly out(vars_);
    for (const auto& [e, c] : terms_)
      if (e[*idx] < bound) out.terms_.emplace(e, c);
    return out;
  }

  /// Terms in descending graded-lexicographic order.
  std::vector<std::pair<Exponents, Rational>> sorted_terms() const {
    std::vector<std::pair<Exponents, Rational>> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      auto da = std::accumulate(a.first.begin(), a.first.end(), 0UL);
      auto db = std::accumulate(b.first.begin(), b.first.end(), 0UL);
      if (da != db) return da > db;
      return a.first > b.first;
    });
    return out;
  }

  /// Canonical text, e.g. "Y^2 - 6*Y + 11".
  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, c] : sorted_terms()) {
      std::string mono;
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += '*';
        mono += vars_[i];
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      const bool negative = c.sign() < 0;
      const Rational mag = negative ? -c : c;
      if (first) out += negative ? "-" : "";
      else out += negative ? " - " : " + ";
      first = false;
      if (mono.empty()) out += mag.str();
      else if (mag == Rational(1)) out += mono;
      else out += mag.str() + "*" + mono;
    }
    return out;
  }

  static MultiPoly parse(std::string_view text, std::vector<std::string> vars = {});

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
    if (a.size() != b.size()) return false;
    if (a.vars_ == b.vars_) return a.terms_ == b.terms_;
    auto order = merge_variables(a.vars_, b.vars_);
    return a.with_variables(order).terms_ == b.with_variables(order).terms_;
  }

 private:
  MultiPoly& accumulate(const MultiPoly& o, const Rational& sign) {
    if (o.vars_ != vars_) {
      auto order = merge_variables(vars_, o.vars_);
      *this = with_variables(order);
      MultiPoly y = o.with_variables(order);
      for (const auto& [e, c] : y.terms_) add_term(e, c * sign);
      return *this;
    }
    for (const auto& [e, c] : o.terms_) add_term(e, c * sign);
    return *this;
  }

  std::vector<std::string> vars_;
  TermMap terms_;
};

namespace detail {

// Recursive-descent reader for sums of products of rationals, identifiers with
// optional '^k', and parenthesized subexpressions.
class PolyReader {
 public:
  PolyReader(std::string_view text, std::vector<std::string> vars) : s_(text), vars_(std::move(vars)) {}

  MultiPoly read() {
    MultiPoly p = sum();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return p.with_variables(MultiPoly::merge_variables(vars_, p.variables()));
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw PreconditionError("polynomial parse error at offset " + std::to_string(i_) + ": " + why);
  }
  void skip() {
    while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\n' || s_[i_] == '\r')) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }
  MultiPoly sum() {
    MultiPoly acc(vars_);
    bool negative = false;
    if (eat('-')) negative = true;
    else eat('+');
    MultiPoly t = product();
    acc += negative ? -t : t;
    for (;;) {
      if (eat('+')) acc += product();
      else if (eat('-')) acc -= product();
      else break;
    }
    return acc;
  }
  MultiPoly product() {
    MultiPoly acc = power();
    while (eat('*')) acc *= power();
    return acc;
  }
  MultiPoly power() {
    MultiPoly base = atom();
    if (eat('^')) {
      skip();
      std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (start == i_) fail("expected exponent");
      base = base.pow(std::stol(std::string(s_.substr(start, i_ - start))));
    }
    return base;
  }
  MultiPoly atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    if (eat('(')) {
      MultiPoly inner = sum();
      if (!eat(')')) fail("expected ')'");
      return inner;
    }
    char c = s_[i_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (i_ < s_.size() && s_[i_] == '/') {
        ++i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      }
      return MultiPoly::constant(Rational::parse(s_.substr(start, i_ - start)), vars_);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      return MultiPoly::variable(std::string(s_.substr(start, i_ - start)), vars_);
    }
    if (c == '-') {
      ++i_;
      return -power();
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string_view s_;
  std::vector<std::string> vars_;
  std::size_t i_ = 0;
};

}  // namespace detail

/// Parses the canonical text form (and general sums/products with parentheses).
/// Variables not listed in `vars` are appended in order of first appearance.
inline MultiPoly MultiPoly::parse(std::string_view text, std::vector<std::string> vars) {
  return detail::PolyReader(text, std::move(vars)).read();
}

/// Number of terms; with a restriction set, the number of distinct monomials
/// in those variables when the polynomial is read over the remaining ones.
inline std::size_t count_terms(const MultiPoly& p, const std::vector<std::string>* restrict_to = nullptr) {
  if (!restrict_to) return p.size();
  std::vector<std::size_t> idx;
  for (const auto& name : *restrict_to) {
    auto i = p.index_of(name);
    if (!i) throw PreconditionError("count_terms: '" + name + "' is not a variable of the polynomial");
    idx.push_back(*i);
  }
  std::unordered_map<Exponents, bool, ExponentsHash> seen;
  for (const auto& [e, c] : p.terms()) {
    Exponents f(idx.size());
    for (std::size_t k = 0; k < idx.size(); ++k) f[k] = e[idx[k]];
    seen.emplace(std::move(f), true);
  }
  return seen.size();
}

}  // namespace elimkit
