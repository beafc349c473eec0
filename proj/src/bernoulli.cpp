#include "padicl/bernoulli.hpp"

#include <mutex>
#include <numeric>
#include <vector>

#include "padicl/characters.hpp"

namespace padicl {

namespace {

mpz_class binomial(unsigned n, unsigned k) {
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

BigRational bernoulli_number(unsigned j) {
  static std::mutex mutex;
  static std::vector<BigRational> table{BigRational(1)};
  std::lock_guard lock(mutex);
  // sum_{i<=k} C(k+1, i) B_i = 0
  while (table.size() <= j) {
    const auto k = static_cast<unsigned>(table.size());
    if (k >= 3 && k % 2 == 1) {
      table.emplace_back(0);
      continue;
    }
    BigRational acc = 0;
    for (unsigned i = 0; i < k; ++i)
      if (table[i] != 0) acc += BigRational(binomial(k + 1, i)) * table[i];
    BigRational b = -acc / BigRational(k + 1);
    b.canonicalize();
    table.push_back(b);
  }
  return table[j];
}

BigRational bernoulli_polynomial(unsigned k, const BigRational& x) {
  // Horner in x over the coefficients C(k,i) B_i of x^(k-i)
  BigRational acc = 0;
  for (unsigned i = 0; i <= k; ++i) acc = acc * x + BigRational(binomial(k, i)) * bernoulli_number(i);
  acc.canonicalize();
  return acc;
}

StaudtClass von_staudt_valuation(unsigned j, unsigned p) {
  if (j < 2 || j % 2 != 0) throw ConfigError("von Staudt–Clausen criterion needs an even index >= 2");
  return j % (p - 1) == 0 ? StaudtClass::pole : StaudtClass::integral;
}

unsigned digit_sum(std::uint64_t j, unsigned p) {
  unsigned s = 0;
  for (; j; j /= p) s += static_cast<unsigned>(j % p);
  return s;
}

std::uint64_t factorial_valuation(std::uint64_t j, unsigned p) {
  std::uint64_t v = 0;
  for (std::uint64_t pk = p; pk <= j; pk *= p) {
    v += j / pk;
    if (pk > j / p) break;
  }
  return v;
}

CycloPadic generalized_bernoulli(unsigned n, const DirichletCharacter& chi, const PadicContext& ctx) {
  if (n == 0) throw ConfigError("generalized Bernoulli numbers are indexed from n = 1");
  const DirichletCharacter prim = chi.primitive();
  const std::uint64_t f = prim.conductor();
  const unsigned m = prim.root_order();
  CycloPadic acc(ctx, m);
  mpz_class fpow;
  mpz_ui_pow_ui(fpow.get_mpz_t(), f, n - 1);
  const std::uint64_t start = f == 1 ? 0 : 1;
  for (std::uint64_t a = start; a < start + f; ++a) {
    if (f > 1 && std::gcd(a, f) != 1) continue;
    BigRational x(mpz_class(static_cast<unsigned long>(a)), mpz_class(static_cast<unsigned long>(f)));
    x.canonicalize();
    const BigRational weight = BigRational(fpow) * bernoulli_polynomial(n, x);
    if (weight == 0) continue;
    const CycloPadic value = f == 1 ? CycloPadic::root_of_unity(ctx, m, 0)
                                    : prim.evaluate(static_cast<std::int64_t>(a), ctx);
    acc += value * PadicNumber::from_rational(ctx, weight);
  }
  return acc;
}

}  // namespace padicl
