#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "padicl/errors.hpp"

namespace padicl {

/// Sentinel for "no finite bound": the valuation of zero, the absolute
/// precision of an exact zero.
inline constexpr int kInfinity = std::numeric_limits<int>::max();

/// p-adic valuation of a nonzero integer; kInfinity for zero.
int valuation(const mpz_class& x, unsigned p);
int valuation(std::int64_t x, unsigned p);
int valuation(const mpq_class& x, unsigned p);

/// Prime p, the modulus q (p for odd p, 4 for p = 2), and the working
/// number of p-adic digits N. Cheap to copy; shareable across threads.
class PadicContext {
 public:
  PadicContext(unsigned p, int precision);

  unsigned prime() const { return data_->p; }
  unsigned q() const { return data_->q; }
  int precision() const { return data_->n; }
  /// v_p(q): 1 for odd p, 2 for p = 2.
  int q_valuation() const { return data_->p == 2 ? 2 : 1; }
  /// Order of the Teichmüller character: p - 1, or 2 when p = 2.
  unsigned teichmuller_order() const { return data_->p == 2 ? 2 : data_->p - 1; }

  /// p^k for k >= 0.
  const mpz_class& power(int k) const;

  friend bool operator==(const PadicContext& a, const PadicContext& b) {
    return a.data_ == b.data_ || (a.prime() == b.prime() && a.precision() == b.precision());
  }

 private:
  struct Data {
    unsigned p;
    unsigned q;
    int n;
    std::vector<mpz_class> powers;
  };
  std::shared_ptr<const Data> data_;
};

/// An element of Q_p known modulo p^precision.
///
/// The value is p^valuation * unit with gcd(unit, p) = 1, and the unit is
/// stored modulo p^(precision - valuation). The relative precision
/// precision - valuation never exceeds the context's N. A zero carries
/// valuation kInfinity and either a finite precision (a value known only to
/// be divisible by p^precision) or kInfinity (an exact zero).
class PadicNumber {
 public:
  explicit PadicNumber(const PadicContext& ctx);  // exact zero

  static PadicNumber from_integer(const PadicContext& ctx, const mpz_class& x);
  static PadicNumber from_integer(const PadicContext& ctx, std::int64_t x);
  static PadicNumber from_rational(const PadicContext& ctx, const mpq_class& x);
  /// The residue class of `residue` modulo p^precision.
  static PadicNumber from_residue(const PadicContext& ctx, const mpz_class& residue, int precision);
  /// O(p^precision): a value known only to vanish modulo p^precision.
  static PadicNumber inexact_zero(const PadicContext& ctx, int precision);

  const PadicContext& context() const { return ctx_; }
  int valuation() const { return valuation_; }
  int precision() const { return precision_; }
  int relative_precision() const;
  /// Unit part modulo p^relative_precision (0 for zero).
  const mpz_class& unit() const { return unit_; }

  bool is_zero() const { return valuation_ == kInfinity; }
  bool is_exact_zero() const { return is_zero() && precision_ == kInfinity; }

  /// Representative of the value modulo p^k in [0, p^k). Requires a
  /// p-integral value and k <= precision().
  mpz_class residue(int k) const;

  /// The same value with absolute precision lowered to min(precision(), k).
  PadicNumber with_precision(int k) const;

  PadicNumber operator-() const;
  PadicNumber& operator+=(const PadicNumber& o);
  PadicNumber& operator-=(const PadicNumber& o);
  PadicNumber& operator*=(const PadicNumber& o);
  PadicNumber& operator/=(const PadicNumber& o);
  friend PadicNumber operator+(PadicNumber a, const PadicNumber& b) { return a += b; }
  friend PadicNumber operator-(PadicNumber a, const PadicNumber& b) { return a -= b; }
  friend PadicNumber operator*(PadicNumber a, const PadicNumber& b) { return a *= b; }
  friend PadicNumber operator/(PadicNumber a, const PadicNumber& b) { return a /= b; }

  /// Structural equality: same valuation, precision and stored unit.
  friend bool operator==(const PadicNumber& a, const PadicNumber& b);

  /// `v=<valuation> digits=<d_0,...> mod p^<precision>`, digits of the
  /// unit low-order first.
  std::string render() const;

 private:
  void normalize(mpz_class value, int base_valuation, int precision);

  PadicContext ctx_;
  int valuation_ = kInfinity;
  int precision_ = kInfinity;
  mpz_class unit_;
};

/// Certified lower bound on v_p(a - b): the exact valuation when the
/// difference is known to be nonzero, otherwise the known precision.
int difference_valuation(const PadicNumber& a, const PadicNumber& b);

/// Teichmüller representative ω(a): the (p-1)-st root of unity congruent to
/// a mod p (for p = 2, the sign ±1 congruent to a mod 4).
PadicNumber teichmuller(std::int64_t a, const PadicContext& ctx);

/// ⟨a⟩ = a / ω(a), a principal unit congruent to 1 mod q.
PadicNumber angle(std::int64_t a, const PadicContext& ctx);

/// Generalized binomial coefficient s(s-1)...(s-j+1)/j!.
PadicNumber binom_padic(const PadicNumber& s, unsigned j);

/// Whether s lies in the disc |s| < q p^(-1/(p-1)) intersected with Q_p,
/// i.e. v_p(s) >= 0.
bool is_admissible_exponent(const PadicNumber& s);

/// Number of binomial-series terms needed for u^s when v_p(u - 1) = w:
/// the smallest K with K w - floor((K - 1)/(p - 1)) >= target.
unsigned binomial_series_terms(int w, unsigned p, int target);

/// u^s for a principal unit u (u ≡ 1 mod q) and admissible s via the
/// binomial series sum C(s,k) (u-1)^k, truncated once every dropped term
/// lies below the working precision.
PadicNumber power_st(const PadicNumber& u, const PadicNumber& s);

/// u^n by repeated squaring; negative n inverts.
PadicNumber power_st(const PadicNumber& u, std::int64_t n);

/// The same value and precision expressed in another context of the same
/// prime. Relative precision beyond the target's N is dropped.
PadicNumber change_context(const PadicNumber& x, const PadicContext& to);

}  // namespace padicl
