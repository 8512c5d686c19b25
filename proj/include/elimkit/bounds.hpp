#pragma once

#include <mpfr.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "elimkit/errors.hpp"
#include "elimkit/expand.hpp"
#include "elimkit/rational.hpp"
#include "elimkit/sequences.hpp"

namespace elimkit {

/// deg(V cap W) <= deg V * deg W.
inline Integer bezout(const Integer& deg_v, const Integer& deg_w) {
  if (deg_v < 0 || deg_w < 0) throw PreconditionError("bezout: degrees must be nonnegative");
  return deg_v * deg_w;
}

enum class VcVariant { Complex, Real };

struct VcUpper {
  std::uint64_t L = 0, Delta2 = 0;
  VcVariant variant = VcVariant::Complex;
  std::optional<Rational> rhs_exact;  // set when the right-hand side is rational
  std::string rhs_lower, rhs_upper;   // certified decimal enclosure
  std::uint64_t max_dim = 0;
  std::vector<std::string> notes;
};

namespace detail {

/// exponent k when x = 2^k, else nullopt
inline std::optional<unsigned long> log2_exact(const Integer& x) {
  if (x <= 0) return std::nullopt;
  const auto k = mpz_scan1(x.get_mpz_t(), 0);
  if (mpz_sizeinbase(x.get_mpz_t(), 2) != k + 1) return std::nullopt;
  return k;
}

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

inline std::string mpfr_decimal(mpfr_srcptr x, mpfr_rnd_t rnd) {
  char buf[128];
  mpfr_snprintf(buf, sizeof buf, rnd == MPFR_RNDD ? "%.30RDf" : "%.30RUf", x);
  return buf;
}

/// Enclosure [lo, hi] of c * log2(a) * log2(s) with directed rounding (a, s >= 1).
inline void enclose(std::uint64_t c, const Integer& a, const Integer& s, mpfr_prec_t prec, Mpfr& lo, Mpfr& hi) {
  Mpfr t(prec);
  for (int side = 0; side < 2; ++side) {
    const mpfr_rnd_t r = side == 0 ? MPFR_RNDD : MPFR_RNDU;
    Mpfr& out = side == 0 ? lo : hi;
    mpfr_set_z(t.get(), a.get_mpz_t(), r);
    mpfr_log2(out.get(), t.get(), r);
    mpfr_set_z(t.get(), s.get_mpz_t(), r);
    mpfr_log2(t.get(), t.get(), r);
    mpfr_mul(out.get(), out.get(), t.get(), r);
    mpfr_mul_ui(out.get(), out.get(), c, r);
  }
}

/// Whether s <= c * log2(a) * log2(s); sets `undecided` if equality could not be excluded.
inline bool vc_accepts(std::uint64_t c, const Integer& a, const Integer& s, bool& undecided) {
  auto ka = log2_exact(a), ks = log2_exact(s);
  if (ka && ks) return s <= Integer(static_cast<unsigned long>(c)) * Integer(*ka) * Integer(*ks);
  for (mpfr_prec_t prec = 128; prec <= 8192; prec *= 2) {
    Mpfr lo(prec), hi(prec), sv(prec);
    enclose(c, a, s, prec, lo, hi);
    mpfr_set_z(sv.get(), s.get_mpz_t(), MPFR_RNDN);  // exact: prec >= bits of s
    if (mpfr_cmp(lo.get(), sv.get()) >= 0) return true;
    if (mpfr_cmp(hi.get(), sv.get()) < 0) return false;
  }
  undecided = true;
  return true;
}

}  // namespace detail

/// Largest s with s / log2(s) <= rhs, rhs = L(1 + log2 Delta2) (complex) or
/// (L+1) log2 Delta2 (real, leading order).
inline VcUpper vc_upper(std::uint64_t L, std::uint64_t Delta2, VcVariant variant = VcVariant::Complex) {
  if (L < 1 || Delta2 < 1) throw PreconditionError("vc_upper: need L >= 1 and Delta2 >= 1");
  VcUpper r;
  r.L = L;
  r.Delta2 = Delta2;
  r.variant = variant;
  // rhs = c * log2(a)
  const std::uint64_t c = variant == VcVariant::Complex ? L : L + 1;
  const Integer a = variant == VcVariant::Complex ? Integer(static_cast<unsigned long>(2 * Delta2))
                                                  : Integer(static_cast<unsigned long>(Delta2));
  if (auto k = detail::log2_exact(a)) r.rhs_exact = Rational(Integer(Integer(static_cast<unsigned long>(c)) * Integer(*k)));
  {
    detail::Mpfr lo(256), hi(256);
    detail::enclose(c, a, Integer(2), 256, lo, hi);  // log2(2) = 1
    r.rhs_lower = detail::mpfr_decimal(lo.get(), MPFR_RNDD);
    r.rhs_upper = detail::mpfr_decimal(hi.get(), MPFR_RNDU);
  }
  if (variant == VcVariant::Real) r.notes.push_back("leading-order bound: the O(1/log dim) term is dropped");

  bool undecided = false;
  auto ok = [&](const Integer& s) { return detail::vc_accepts(c, a, s, undecided); };
  // s / log2 s is increasing from s = 3 on; s = 2 is handled separately.
  if (!ok(Integer(3))) {
    if (ok(Integer(2))) {
      r.max_dim = 2;
    } else {
      r.max_dim = 1;
      r.notes.push_back("no s >= 2 satisfies s/log2(s) <= rhs; reported 1 (convention s >= 2, log2(1) = 0)");
    }
  } else {
    Integer lo = 3, hi = 6;
    while (ok(hi)) {
      lo = hi;
      hi *= 2;
    }
    while (hi - lo > 1) {
      Integer mid = (lo + hi) / 2;
      if (ok(mid)) lo = mid;
      else hi = mid;
    }
    if (!lo.fits_ulong_p()) throw PreconditionError("vc_upper: bound exceeds 64 bits");
    r.max_dim = lo.get_ui();
    if (r.max_dim <= 4) r.notes.push_back("s/log2(s) is not monotone below 3 (values 2, 1.89, 2 at s = 2, 3, 4)");
  }
  if (undecided) r.notes.push_back("a comparison stayed within 8192-bit enclosure width; treated as satisfied");
  return r;
}

struct WltSandwich {
  Rational lower;        // L^2/4 - 1 (strict lower bound on the dimension)
  Integer upper;         // integer upper bracket of 8 (L+t+1)^(3+eps)
  Integer upper_floor;   // integer lower bracket of the same quantity
  bool upper_exact = false;
};

/// L^2/4 - 1 < dim_VC(W_{L,t}) <= 8 (L+t+1)^(3+eps).
inline WltSandwich wlt_vc_sandwich(std::uint64_t L, std::uint64_t t, const Rational& eps) {
  if (L < 1 || t < 1) throw PreconditionError("wlt_vc_sandwich: need L, t >= 1");
  if (eps.sign() <= 0) throw PreconditionError("wlt_vc_sandwich: epsilon must be positive");
  if (!eps.num().fits_ulong_p() || !eps.den().fits_ulong_p()) throw PreconditionError("wlt_vc_sandwich: epsilon too large");
  WltSandwich w;
  const Integer l(static_cast<unsigned long>(L));
  w.lower = Rational(l * l, Integer(4)) - Rational(1);
  const Integer B(static_cast<unsigned long>(L + t + 1));
  const Integer cube = B * B * B;
  const Integer bp = ipow(B, eps.num().get_ui());
  Integer root;
  const bool exact = mpz_root(root.get_mpz_t(), bp.get_mpz_t(), eps.den().get_ui()) != 0;
  w.upper_exact = exact;
  w.upper_floor = 8 * cube * root;
  w.upper = 8 * cube * (exact ? root : Integer(root + 1));
  return w;
}

struct ShatterResult {
  std::size_t dimension = 0;
  std::vector<std::size_t> witness;                  // indices into the pool
  std::vector<std::pair<std::uint64_t, std::size_t>> patterns;  // (subset bitmask over witness, member index)
  std::uint64_t work = 0;
};

/// Largest s <= max_s such that some s-subset of the pool is shattered by the
/// zero sets of the class members.
inline ShatterResult vc_shatter_oracle(const PolyClass& cls, const std::vector<Point>& pool, std::size_t max_s,
                                       std::optional<std::uint64_t> budget = std::nullopt) {
  if (pool.size() > 62) throw PreconditionError("vc_shatter_oracle: pool limited to 62 points");
  if (pool.size() < max_s) throw PreconditionError("vc_shatter_oracle: pool smaller than max_s");
  const std::uint64_t cap = budget.value_or(default_combinatorial_budget());
  ShatterResult r;
  if (cls.members.empty()) return r;
  r.patterns.emplace_back(0, 0);
  const std::size_t t = cls.variables.size();
  std::vector<std::uint64_t> zero_mask(cls.members.size(), 0);
  for (std::size_t k = 0; k < cls.members.size(); ++k)
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (pool[i].size() < t) throw PreconditionError("vc_shatter_oracle: point dimension too small");
      if (cls.members[k].evaluate(std::span<const Rational>(pool[i].data(), t)).is_zero()) zero_mask[k] |= 1ULL << i;
    }
  // s = 0: the empty set is shattered by any nonempty class.
  for (std::size_t s = 1; s <= max_s; ++s) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      r.work += (std::uint64_t{1} << s) * cls.members.size();
      if (r.work > cap) throw BudgetExceeded("combinatorial budget exceeded", r.work);
      // pattern of member k on idx, as a bitmask over positions in idx
      std::vector<std::optional<std::size_t>> seen(std::size_t{1} << s);
      std::size_t covered = 0;
      for (std::size_t k = 0; k < cls.members.size() && covered < seen.size(); ++k) {
        std::uint64_t pat = 0;
        for (std::size_t i = 0; i < s; ++i)
          if (zero_mask[k] >> idx[i] & 1ULL) pat |= 1ULL << i;
        if (!seen[pat]) {
          seen[pat] = k;
          ++covered;
        }
      }
      if (covered == seen.size()) {
        found = true;
        r.dimension = s;
        r.witness = idx;
        r.patterns.clear();
        for (std::uint64_t pat = 0; pat < seen.size(); ++pat) r.patterns.emplace_back(pat, *seen[pat]);
        break;
      }
      // next combination in lexicographic order
      std::size_t i = s;
      while (i > 0 && idx[i - 1] == pool.size() - s + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) break;
  }
  return r;
}

}  // namespace elimkit
