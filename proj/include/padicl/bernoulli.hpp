#pragma once

#include <gmpxx.h>

#include <cstdint>

#include "padicl/cyclo.hpp"

namespace padicl {

/// Exact rational; mpq_class is always kept canonical (reduced, positive
/// denominator).
using BigRational = mpq_class;

class DirichletCharacter;

/// B_j with B_1 = -1/2. Memoized; safe to call from several threads.
BigRational bernoulli_number(unsigned j);

/// B_k(x) = sum_i C(k,i) B_i x^(k-i).
BigRational bernoulli_polynomial(unsigned k, const BigRational& x);

enum class StaudtClass {
  pole,      // |B_j|_p = p
  integral,  // |B_j|_p <= 1
};

/// von Staudt–Clausen: for even j >= 2, B_j has a simple pole at p exactly
/// when (p - 1) divides j.
StaudtClass von_staudt_valuation(unsigned j, unsigned p);

/// Sum of the base-p digits of j.
unsigned digit_sum(std::uint64_t j, unsigned p);

/// v_p(j!) by Legendre's formula.
std::uint64_t factorial_valuation(std::uint64_t j, unsigned p);

/// B_{n,χ} = f^(n-1) sum_{a mod f} χ(a) B_n(a/f) for χ taken at its
/// conductor f. The rational Bernoulli-polynomial values are exact; the
/// character values enter as elements of Z_p[ζ_m]. For the trivial
/// character the sum runs over a = 0, giving B_{1,1} = B_1 = -1/2.
CycloPadic generalized_bernoulli(unsigned n, const DirichletCharacter& chi, const PadicContext& ctx);

}  // namespace padicl
