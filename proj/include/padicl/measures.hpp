#pragma once

#include <cstdint>
#include <functional>

#include "padicl/bernoulli.hpp"
#include "padicl/cyclo.hpp"

namespace padicl {

/// The clopen ball a + d p^n X of X = Z/dZ × Z_p.
class MeasureBall {
 public:
  MeasureBall(std::uint64_t a, std::uint64_t d, unsigned n, unsigned p);

  std::uint64_t residue() const { return a_; }
  std::uint64_t d() const { return d_; }
  unsigned level() const { return n_; }
  unsigned prime() const { return p_; }
  /// d p^n
  std::uint64_t modulus() const { return modulus_; }

 private:
  std::uint64_t a_;
  std::uint64_t d_;
  unsigned n_;
  unsigned p_;
  std::uint64_t modulus_;
};

/// ε_{a,c,F} = (c-1)/2 - {-a F^(-1)}_c, stored doubled so that even and
/// odd c are handled alike.
class EpsilonValue {
 public:
  EpsilonValue(std::int64_t doubled, unsigned c) : doubled_(doubled), c_(c) {}

  std::int64_t doubled() const { return doubled_; }
  unsigned c() const { return c_; }
  BigRational value() const;

  friend bool operator==(const EpsilonValue& a, const EpsilonValue& b) {
    return a.doubled_ == b.doubled_ && a.c_ == b.c_;
  }

 private:
  std::int64_t doubled_;
  unsigned c_;
};

/// {x}_m, the representative of x mod m in [0, m).
std::uint64_t representative(std::int64_t x, std::uint64_t m);

EpsilonValue epsilon_coeff(std::int64_t a, unsigned c, std::uint64_t F);

/// E_k(a + d p^n X) = (d p^n)^(k-1) B_k({a}/(d p^n)) / k.
BigRational ek_value(const MeasureBall& ball, unsigned k);

/// E_{1,c}(a + d p^n X) = E_1(a + d p^n X) - c E_1({a/c} + d p^n X).
BigRational e1c_value_by_definition(const MeasureBall& ball, unsigned c);

/// E_{1,c}(a + d p^n X) through the closed form ε_{a,c,dp^n}.
EpsilonValue e1c_value_closed_form(const MeasureBall& ball, unsigned c);

/// μ(a + d p^n X) = (-1)^{a}; defined for odd p and odd d.
int alternating_measure(const MeasureBall& ball);

/// Level-n Riemann sum of f against E_{1,c} over (Z/dZ)^× × Z_p^×:
/// sum over a mod d p^n with gcd(a, dp) = 1 of f(a) ε_{a,c,dp^n}. The
/// residue range is split across `workers` threads; the result does not
/// depend on the split.
CycloPadic integrate(const std::function<CycloPadic(std::uint64_t)>& f, unsigned c, std::uint64_t d, unsigned n,
                     const PadicContext& ctx, unsigned m, unsigned workers = 1);

}  // namespace padicl
