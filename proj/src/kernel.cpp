#include "kernel.hpp"

namespace padicl::detail {

namespace {

mpz_class pow_ui(unsigned p, int k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(k));
  return r;
}

mpz_class mod_pos(const mpz_class& x, const mpz_class& m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class inv_mod(const mpz_class& x, const mpz_class& m) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()) == 0)
    throw DomainError("residue is not a unit modulo p^W");
  return r;
}

int residue_valuation(const mpz_class& x, unsigned p) { return x == 0 ? kInfinity : valuation(x, p); }

unsigned floor_log(std::uint64_t k, unsigned p) {
  unsigned e = 0;
  for (std::uint64_t pk = p; pk <= k; pk *= p) ++e;
  return e;
}

}  // namespace

std::vector<mpz_class> teichmuller_residues(unsigned p, int digits) {
  const mpz_class mod = pow_ui(p, digits);
  if (p == 2) return {0, 1, 0, mod - 1};
  std::vector<mpz_class> out(p, 0);
  for (unsigned r = 1; r < p; ++r) {
    mpz_class x = r;
    for (int k = 1; k < digits; ++k) {
      const mpz_class m = pow_ui(p, k + 1);
      mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), p, m.get_mpz_t());
    }
    out[r] = x;
  }
  return out;
}

mpz_class angle_residue(u64 a, unsigned p, int digits, const std::vector<mpz_class>& teich) {
  const mpz_class mod = pow_ui(p, digits);
  const mpz_class av = static_cast<unsigned long>(a);
  return mod_pos(av * inv_mod(teich[teich_index(a, p)], mod), mod);
}

mpz_class principal_power(const mpz_class& u, const BigRational& x, unsigned p, int digits) {
  const mpz_class mod = pow_ui(p, digits);
  const mpz_class d = mod_pos(u - 1, mod);
  if (d == 0) return 1 % mod;
  const int w = residue_valuation(d, p);
  if (w < (p == 2 ? 2 : 1)) throw DomainError("principal_power: base is not congruent to 1 mod q");
  if (valuation(x, p) < 0) throw DomainError("principal_power: exponent is not p-integral");
  const int terms = (digits + w - 1) / w;
  mpz_class sum = 1;
  mpz_class dk = 1;
  BigRational binom = 1;
  for (int k = 1; k < terms; ++k) {
    binom *= (x - (k - 1)) / BigRational(k);
    if (binom == 0) break;
    dk = mod_pos(dk * d, mod);
    const mpz_class coeff = mod_pos(mpz_class(binom.get_num()) * inv_mod(binom.get_den(), mod), mod);
    sum = mod_pos(sum + coeff * dk, mod);
  }
  return sum;
}

mpz_class principal_log(const mpz_class& u, unsigned p, int digits) {
  const mpz_class mod = pow_ui(p, digits);
  const int w = residue_valuation(mod_pos(u - 1, mod), p);
  if (w == kInfinity || w >= digits) return 0;
  if (w < (p == 2 ? 2 : 1)) throw DomainError("principal_log: argument is not congruent to 1 mod q");
  std::uint64_t terms = 1;
  while (static_cast<long long>(terms) * w - static_cast<long long>(floor_log(terms, p)) < digits) ++terms;
  const int guard = static_cast<int>(floor_log(terms, p)) + 1;
  const mpz_class wide = pow_ui(p, digits + guard);
  const mpz_class d = mod_pos(u - 1, wide);
  mpz_class sum = 0;
  mpz_class dk = 1;
  for (std::uint64_t k = 1; k < terms; ++k) {
    dk = mod_pos(dk * d, wide);
    std::uint64_t unit = k;
    mpz_class term = dk;
    while (unit % p == 0) {
      unit /= p;
      mpz_divexact_ui(term.get_mpz_t(), term.get_mpz_t(), p);
    }
    term = mod_pos(term * inv_mod(mpz_class(static_cast<unsigned long>(unit)), mod), mod);
    if (k % 2 == 1)
      sum += term;
    else
      sum -= term;
  }
  return mod_pos(sum, mod);
}

std::vector<std::uint32_t> smallest_prime_factors(u64 limit) {
  std::vector<std::uint32_t> spf(limit + 1, 0);
  std::vector<std::uint32_t> primes;
  for (u64 i = 2; i <= limit; ++i) {
    if (spf[i] == 0) {
      spf[i] = static_cast<std::uint32_t>(i);
      primes.push_back(static_cast<std::uint32_t>(i));
    }
    for (std::uint32_t q : primes) {
      if (q > spf[i] || i * q > limit) break;
      spf[i * q] = q;
    }
  }
  return spf;
}

}  // namespace padicl::detail
