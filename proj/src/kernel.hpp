#pragma once

// Residue arithmetic modulo p^W used by the L-function sums. Everything
// here is integer arithmetic on representatives; precision bookkeeping
// happens when the totals are turned back into PadicNumbers.

#include <gmpxx.h>

#include <cstdint>
#include <vector>

#include "padicl/bernoulli.hpp"
#include "padicl/characters.hpp"
#include "padicl/parallel.hpp"

namespace padicl::detail {

using u64 = std::uint64_t;

/// Z/p^W with p^W < 2^63.
struct Ring64 {
  using T = u64;
  u64 mod;

  explicit Ring64(const mpz_class& m) : mod(m.get_ui()) {}
  static bool fits(const mpz_class& m) { return mpz_sizeinbase(m.get_mpz_t(), 2) <= 62; }

  T zero() const { return 0; }
  T one() const { return 1 % mod; }
  T add(T a, T b) const {
    const T s = a + b;
    return s >= mod ? s - mod : s;
  }
  T sub(T a, T b) const { return a >= b ? a - b : a + (mod - b); }
  T mul(T a, T b) const { return static_cast<T>(static_cast<unsigned __int128>(a) * b % mod); }
  T from_int(std::int64_t x) const {
    const auto m = static_cast<std::int64_t>(mod);
    return static_cast<T>(((x % m) + m) % m);
  }
  T from_mpz(const mpz_class& x) const {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), mod);
    return r.get_ui();
  }
  mpz_class to_mpz(T x) const { return mpz_class(static_cast<unsigned long>(x)); }
  T inv(T a) const {
    __int128 t = 0, nt = 1;
    __int128 r = mod, nr = a;
    while (nr != 0) {
      const __int128 q = r / nr;
      const __int128 tt = t - q * nt;
      t = nt;
      nt = tt;
      const __int128 rr = r - q * nr;
      r = nr;
      nr = rr;
    }
    if (t < 0) t += mod;
    return static_cast<T>(t);
  }
};

/// Z/p^W for any W.
struct RingMpz {
  using T = mpz_class;
  mpz_class mod;

  explicit RingMpz(const mpz_class& m) : mod(m) {}

  T zero() const { return 0; }
  T one() const { return 1; }
  T add(const T& a, const T& b) const {
    T s = a + b;
    if (s >= mod) s -= mod;
    return s;
  }
  T sub(const T& a, const T& b) const {
    T s = a - b;
    if (s < 0) s += mod;
    return s;
  }
  T mul(const T& a, const T& b) const {
    T r = a * b;
    mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), mod.get_mpz_t());
    return r;
  }
  T from_int(std::int64_t x) const { return from_mpz(mpz_class(static_cast<long>(x))); }
  T from_mpz(const mpz_class& x) const {
    T r;
    mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), mod.get_mpz_t());
    return r;
  }
  mpz_class to_mpz(const T& x) const { return x; }
  T inv(const T& a) const {
    T r;
    mpz_invert(r.get_mpz_t(), a.get_mpz_t(), mod.get_mpz_t());
    return r;
  }
};

template <class R>
typename R::T ring_pow(const R& ring, typename R::T base, u64 e) {
  typename R::T r = ring.one();
  while (e) {
    if (e & 1) r = ring.mul(r, base);
    e >>= 1;
    if (e) base = ring.mul(base, base);
  }
  return r;
}

/// Teichmüller lifts of the residues mod p (mod 4 when p = 2) to p^W,
/// indexed by the residue; zero at non-units.
std::vector<mpz_class> teichmuller_residues(unsigned p, int digits);

/// Index into teichmuller_residues for an integer a.
inline unsigned teich_index(u64 a, unsigned p) { return static_cast<unsigned>(p == 2 ? a % 4 : a % p); }

/// u^x mod p^W for a principal unit u (v_p(u - 1) >= v_p(q)) and x in Z_(p),
/// by the binomial series with exact rational coefficients.
mpz_class principal_power(const mpz_class& u, const BigRational& x, unsigned p, int digits);

/// log u mod p^W for a principal unit u.
mpz_class principal_log(const mpz_class& u, unsigned p, int digits);

/// ⟨a⟩ mod p^W.
mpz_class angle_residue(u64 a, unsigned p, int digits, const std::vector<mpz_class>& teich);

/// Smallest-prime-factor table on [0, limit].
std::vector<std::uint32_t> smallest_prime_factors(u64 limit);

/// One weighted character sum. For every a in [1, limit) with p ∤ a, ψ(a) ≠ 0
/// and weight(a) ≠ 0, adds weight(a) * scalar(a) * a^(-j) into
/// bucket (j - jmin, e(a)) for jmin <= j <= jmax, where ψ(a) = ζ_m^e(a). The
/// buckets are returned as a flat vector, j-major.
template <class R, class Scalar, class Weight>
std::vector<typename R::T> character_sum(const R& ring, u64 limit, unsigned p, const std::vector<int>& psi,
                                         unsigned m, unsigned jmin, unsigned jmax, Scalar&& scalar,
                                         Weight&& weight, unsigned workers) {
  using T = typename R::T;
  const u64 d = psi.size();
  const std::size_t width = static_cast<std::size_t>(jmax - jmin + 1) * m;
  workers = std::max(1u, workers);
  std::vector<std::vector<T>> partial(workers);
  for_each_chunk(1, limit, workers, [&](unsigned w, u64 lo, u64 hi) {
    std::vector<T> acc(width, ring.zero());
    for (u64 a = lo; a < hi; ++a) {
      if (a % p == 0) continue;
      const int e = psi[a % d];
      if (e < 0) continue;
      const std::int64_t wt = weight(a);
      if (wt == 0) continue;
      T term = ring.mul(scalar(a), ring.from_int(wt));
      if (jmax > 0) {
        const T ainv = ring.inv(ring.from_int(static_cast<std::int64_t>(a)));
        if (jmin > 0) term = ring.mul(term, ring_pow(ring, ainv, jmin));
        for (unsigned j = jmin;; ++j) {
          T& slot = acc[static_cast<std::size_t>(j - jmin) * m + static_cast<unsigned>(e)];
          slot = ring.add(slot, term);
          if (j == jmax) break;
          term = ring.mul(term, ainv);
        }
      } else {
        T& slot = acc[static_cast<unsigned>(e)];
        slot = ring.add(slot, term);
      }
    }
    partial[w] = std::move(acc);
  });
  std::vector<T> total(width, ring.zero());
  for (const auto& part : partial)
    for (std::size_t i = 0; i < width; ++i) total[i] = ring.add(total[i], part[i]);
  return total;
}

}  // namespace padicl::detail
