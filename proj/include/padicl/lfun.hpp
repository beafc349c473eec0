#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padicl/bernoulli.hpp"
#include "padicl/characters.hpp"
#include "padicl/cyclo.hpp"

namespace padicl {

/// A point (s, χ) at which L_p is evaluated. The character is stored with
/// p attached and reduced to its conductor.
class EvalPoint {
 public:
  /// Rejects odd characters, characters whose order is divisible by p and
  /// exponents s outside the admissible disc (ConfigError).
  EvalPoint(const DirichletCharacter& chi, const BigRational& s, const PadicContext& ctx);

  const DirichletCharacter& character() const { return chi_; }
  const BigRational& s() const { return s_; }
  const PadicContext& context() const { return ctx_; }
  /// Conductor f of χ.
  std::uint64_t conductor() const { return chi_.conductor(); }
  /// Prime-to-p part d of the conductor.
  std::uint64_t tame_conductor() const { return chi_.abstract_modulus(); }
  /// Ring order m of the character values (and of every L-value).
  unsigned ring_order() const { return chi_.root_order(); }
  bool has_pole() const { return chi_.is_trivial() && s_ == 1; }

 private:
  DirichletCharacter chi_;
  BigRational s_;
  PadicContext ctx_;
};

enum class Route { washington, kl, series, measure, euler };

std::string route_tag(Route r);

/// An L-value together with the exponent e such that it is correct mod p^e.
struct LpResult {
  CycloPadic value;
  int guaranteed_precision;
  /// The computed value at its full arithmetic precision, before truncation
  /// to the proved bound.
  CycloPadic working_value;
  Route route;
  std::uint64_t F = 0;
  unsigned c = 0;
  std::vector<unsigned> euler_set;
  unsigned level = 0;

  /// `value=<rendering> prec=p^<e> route=<tag>`; the value is truncated to
  /// its guaranteed precision.
  std::string render() const;
};

/// v_p(F) - v_p(q) - 1: the valuation of δ(F/qp).
int delta_bound(const PadicContext& ctx, std::uint64_t F);

/// For odd p, the integer consequence of the sharpened error term
/// p^(2 - (p-2)/(p-1)) |F|_p: v_p(F) - 1.
int kl_tightened_bound(const PadicContext& ctx, std::uint64_t F);

/// Default truncation index for the Bernoulli series: the smallest J whose
/// first dropped term has valuation >= target.
unsigned washington_terms(const PadicContext& ctx, std::uint64_t F, int target);

/// (1/F)(1/(s-1)) Σ_{a<=F, p∤a} χ(a)⟨a⟩^(1-s) Σ_{j<=J} C(1-s, j) (F/a)^j B_j.
LpResult lp_washington(const EvalPoint& pt, std::uint64_t F, std::optional<unsigned> jmax = std::nullopt,
                       unsigned workers = 1);

/// The j = 0 part of lp_washington alone; correct up to δ(F/qp).
LpResult lp_kl_approx(const EvalPoint& pt, std::uint64_t F, unsigned workers = 1);

/// Σ_{a<F, p∤a} χω^(-1)(a)⟨a⟩^(-s) ε_{a,c,F}, at working precision.
CycloPadic lp_dirichlet_series(const EvalPoint& pt, unsigned c, std::uint64_t F, unsigned workers = 1);

/// The same sum restricted to a prime to every l in S.
CycloPadic euler_factored_series(const EvalPoint& pt, unsigned c, std::uint64_t F,
                                 const std::vector<unsigned>& S, unsigned workers = 1);

/// 1 - χ(c)⟨c⟩^(1-s).
CycloPadic regularization_factor(const EvalPoint& pt, unsigned c);

/// 1 - χω^(-1)(l)⟨l⟩^(-s).
CycloPadic euler_factor(const EvalPoint& pt, unsigned l);

/// L_p = -(1 - χ(c)⟨c⟩^(1-s))^(-1) Σ χω^(-1)(a)⟨a⟩^(-s) ε_{a,c,F}.
LpResult lp_from_series(const EvalPoint& pt, unsigned c, std::uint64_t F, unsigned workers = 1);

/// The Euler-peeled series solved for L_p by dividing out the peeled
/// factors as well as the regularization factor.
LpResult lp_euler(const EvalPoint& pt, unsigned c, std::uint64_t F, const std::vector<unsigned>& S,
                  unsigned workers = 1);

/// Level-n Riemann sum of χω^(-1)(a)⟨a⟩^(-s) against E_{1,c}, at working
/// precision.
CycloPadic measure_integral(const EvalPoint& pt, unsigned c, unsigned n, unsigned workers = 1);

/// measure_integral solved for L_p.
LpResult lp_via_measure(const EvalPoint& pt, unsigned c, unsigned n, unsigned workers = 1);

/// ζ_{p,i}(s) = L_p(s, ω^(1-i)) for odd p and odd i in [1, p-2]. With c = 2
/// the sum is taken against the alternating measure.
LpResult zeta_branch(int i, const BigRational& s, const PadicContext& ctx, unsigned c, std::uint64_t F,
                     unsigned workers = 1);

/// -(1 - χω^(-n)(p) p^(n-1)) B_{n,χω^(-n)} / n, the value L_p(1-n, χ).
CycloPadic interpolation_oracle(unsigned n, const DirichletCharacter& chi, const PadicContext& ctx);

}  // namespace padicl
