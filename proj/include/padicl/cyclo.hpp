#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "padicl/padic.hpp"

namespace padicl {

/// Φ_m and the reductions of x^e modulo Φ_m, shared by every element of
/// Z_p[x]/(Φ_m).
class CyclotomicModulus {
 public:
  static std::shared_ptr<const CyclotomicModulus> get(unsigned m);

  unsigned order() const { return m_; }
  unsigned degree() const { return static_cast<unsigned>(phi_.size()) - 1; }
  /// Coefficients of Φ_m, low-order first; monic.
  const std::vector<std::int64_t>& polynomial() const { return phi_; }
  /// Coefficients of x^e mod Φ_m for 0 <= e < m.
  const std::vector<std::int64_t>& root_power(unsigned e) const { return powers_[e % m_]; }

 private:
  explicit CyclotomicModulus(unsigned m);

  unsigned m_;
  std::vector<std::int64_t> phi_;
  std::vector<std::vector<std::int64_t>> powers_;
};

/// Element of Z_p[x]/(Φ_m(x)), stored as deg Φ_m coefficients. For m = 1
/// and m = 2 the ring is Z_p itself (x = 1 or x = -1). When Φ_m splits mod p
/// the ring is a product of unramified extensions and may contain zero
/// divisors.
class CycloPadic {
 public:
  CycloPadic(const PadicContext& ctx, unsigned m);  // zero

  static CycloPadic scalar(const PadicNumber& value, unsigned m);
  /// ζ_m^e, i.e. x^e reduced mod Φ_m.
  static CycloPadic root_of_unity(const PadicContext& ctx, unsigned m, std::int64_t e);
  static CycloPadic from_coefficients(std::vector<PadicNumber> coeffs, unsigned m);

  const PadicContext& context() const { return ctx_; }
  unsigned order() const { return modulus_->order(); }
  unsigned degree() const { return modulus_->degree(); }
  const std::vector<PadicNumber>& coefficients() const { return coeffs_; }
  const PadicNumber& coefficient(unsigned i) const { return coeffs_[i]; }

  /// Minimum coefficient valuation (kInfinity when all vanish).
  int valuation() const;
  /// Minimum coefficient absolute precision.
  int precision() const;
  bool is_zero() const;

  CycloPadic operator-() const;
  CycloPadic& operator+=(const CycloPadic& o);
  CycloPadic& operator-=(const CycloPadic& o);
  CycloPadic& operator*=(const CycloPadic& o);
  CycloPadic& operator*=(const PadicNumber& s);
  CycloPadic& operator/=(const PadicNumber& s);
  friend CycloPadic operator+(CycloPadic a, const CycloPadic& b) { return a += b; }
  friend CycloPadic operator-(CycloPadic a, const CycloPadic& b) { return a -= b; }
  friend CycloPadic operator*(CycloPadic a, const CycloPadic& b) { return a *= b; }
  friend CycloPadic operator*(CycloPadic a, const PadicNumber& b) { return a *= b; }
  friend CycloPadic operator/(CycloPadic a, const PadicNumber& b) { return a /= b; }

  /// Multiplicative inverse via elimination on the multiplication matrix,
  /// pivoting on minimal valuation. Loses precision equal to the valuation
  /// of the matrix's determinant. Throws DomainError when the matrix is
  /// singular at the working precision.
  CycloPadic inverse() const;

  /// Image under x ↦ root, for a root of Φ_m in Z_p.
  PadicNumber embed(const PadicNumber& root) const;

  /// The same element with every coefficient's precision lowered to k.
  CycloPadic with_precision(int k) const;

  friend bool operator==(const CycloPadic& a, const CycloPadic& b);

  /// `[c_0 ; c_1 ; ...]` with each coefficient rendered as a PadicNumber.
  std::string render() const;

 private:
  void check_compatible(const CycloPadic& o) const;

  PadicContext ctx_;
  std::shared_ptr<const CyclotomicModulus> modulus_;
  std::vector<PadicNumber> coeffs_;
};

/// Certified lower bound on the coefficient valuation of a - b.
int difference_valuation(const CycloPadic& a, const CycloPadic& b);

/// Coefficientwise change_context.
CycloPadic change_context(const CycloPadic& x, const PadicContext& to);

}  // namespace padicl
