#include "padicl/lfun.hpp"

#include <algorithm>
#include <numeric>

#include "kernel.hpp"
#include "padicl/measures.hpp"

namespace padicl {

namespace {

using detail::u64;

int v_of(std::uint64_t x, unsigned p) { return valuation(static_cast<std::int64_t>(x), p); }

bool is_prime_u(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

mpz_class ipow(unsigned p, int k) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, static_cast<unsigned long>(k));
  return r;
}

template <class Fn>
auto with_ring(unsigned p, int digits, Fn&& fn) {
  const mpz_class mod = ipow(p, digits);
  if (detail::Ring64::fits(mod)) return fn(detail::Ring64(mod));
  return fn(detail::RingMpz(mod));
}

unsigned omega_order(unsigned p) { return p == 2 ? 2 : p - 1; }

unsigned reduce_exponent(const BigRational& e, unsigned ord) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), mpz_class(e.get_num()).get_mpz_t(), ord);
  return static_cast<unsigned>(r.get_ui());
}

/// a ↦ ω(a)^k ⟨a⟩^x mod p^W (or ω(a)^k log⟨a⟩), for p ∤ a.
template <class R>
class ScalarTable {
 public:
  using T = typename R::T;

  static ScalarTable power(const R& ring, unsigned p, int digits, std::int64_t k, const BigRational& x,
                           u64 limit) {
    ScalarTable st(ring, p);
    const unsigned ord = omega_order(p);
    const bool small_integer = x.get_den() == 1 && abs(x.get_num()) <= 1000000;
    if (small_integer) {
      const long xi = mpz_class(x.get_num()).get_si();
      st.magnitude_ = static_cast<u64>(xi < 0 ? -xi : xi);
      st.negative_ = xi < 0;
      // ⟨a⟩^x = a^x ω(a)^(-x)
      st.set_omega(digits, reduce_exponent(BigRational(k - xi), ord));
      return st;
    }
    st.set_omega(digits, reduce_exponent(BigRational(k), ord));
    st.tabulate(limit, digits, [&](u64 prime, const std::vector<mpz_class>& teich) {
      return detail::principal_power(detail::angle_residue(prime, p, digits, teich), x, p, digits);
    }, /*multiplicative=*/true);
    return st;
  }

  static ScalarTable log(const R& ring, unsigned p, int digits, std::int64_t k, u64 limit) {
    ScalarTable st(ring, p);
    st.set_omega(digits, reduce_exponent(BigRational(k), omega_order(p)));
    st.tabulate(limit, digits, [&](u64 prime, const std::vector<mpz_class>& teich) {
      return detail::principal_log(detail::angle_residue(prime, p, digits, teich), p, digits);
    }, /*multiplicative=*/false);
    return st;
  }

  T operator()(u64 a) const {
    const T& w = omega_[detail::teich_index(a, p_)];
    if (tabulated_) return ring_->mul(w, table_[a]);
    if (magnitude_ == 0) return w;
    T base = ring_->from_int(static_cast<std::int64_t>(a));
    if (negative_) base = ring_->inv(base);
    return ring_->mul(w, detail::ring_pow(*ring_, base, magnitude_));
  }

 private:
  ScalarTable(const R& ring, unsigned p) : ring_(&ring), p_(p) {}

  void set_omega(int digits, unsigned e) {
    const auto teich = detail::teichmuller_residues(p_, digits);
    omega_.clear();
    for (const auto& t : teich) omega_.push_back(detail::ring_pow(*ring_, ring_->from_mpz(t), e));
  }

  template <class PrimeValue>
  void tabulate(u64 limit, int digits, PrimeValue&& prime_value, bool multiplicative) {
    if (limit > (u64{1} << 31)) throw ConfigError("F is too large for a tabulated exponent");
    tabulated_ = true;
    const auto teich = detail::teichmuller_residues(p_, digits);
    const auto spf = detail::smallest_prime_factors(limit);
    table_.assign(limit + 1, ring_->zero());
    if (limit >= 1) table_[1] = multiplicative ? ring_->one() : ring_->zero();
    for (u64 a = 2; a <= limit; ++a) {
      if (a % p_ == 0) continue;
      const u64 l = spf[a];
      if (l == a) {
        table_[a] = ring_->from_mpz(prime_value(a, teich));
      } else {
        table_[a] = multiplicative ? ring_->mul(table_[l], table_[a / l]) : ring_->add(table_[l], table_[a / l]);
      }
    }
  }

  const R* ring_;
  unsigned p_;
  std::vector<T> omega_;
  bool tabulated_ = false;
  std::vector<T> table_;
  bool negative_ = false;
  u64 magnitude_ = 0;
};

template <class R>
CycloPadic bucket_value(const R& ring, const std::vector<typename R::T>& buckets, std::size_t offset, unsigned m,
                        const PadicContext& wctx) {
  CycloPadic acc(wctx, m);
  for (unsigned e = 0; e < m; ++e) {
    const PadicNumber s = PadicNumber::from_residue(wctx, ring.to_mpz(buckets[offset + e]), wctx.precision());
    acc += CycloPadic::root_of_unity(wctx, m, e) * s;
  }
  return acc;
}

void check_modulus(const EvalPoint& pt, std::uint64_t F) {
  const PadicContext& ctx = pt.context();
  if (F == 0) throw ConfigError("F must be positive");
  if (F % ctx.q() != 0)
    throw ConfigError("F = " + std::to_string(F) + " is not a multiple of q = " + std::to_string(ctx.q()));
  if (F % pt.conductor() != 0)
    throw ConfigError("F = " + std::to_string(F) + " is not a multiple of the conductor " +
                      std::to_string(pt.conductor()));
}

void check_regularizer(unsigned c, std::uint64_t F) {
  if (c < 2) throw ConfigError("c must be at least 2");
  if (std::gcd(static_cast<std::uint64_t>(c), F) != 1)
    throw ConfigError("c = " + std::to_string(c) + " is not coprime to F = " + std::to_string(F));
}

void check_pole(const EvalPoint& pt) {
  if (pt.has_pole()) throw DomainError("pole at s = 1 for the trivial character");
}

void check_euler_set(const EvalPoint& pt, std::uint64_t F, const std::vector<unsigned>& S) {
  for (unsigned l : S) {
    if (!is_prime_u(l)) throw ConfigError("Euler set element " + std::to_string(l) + " is not prime");
    if (l == pt.context().prime()) throw ConfigError("the Euler set must not contain p");
    if (F % l != 0)
      throw ConfigError("F = " + std::to_string(F) + " is not a multiple of Euler prime " + std::to_string(l));
  }
}

LpResult finish(const CycloPadic& value, int bound, const EvalPoint& pt, Route route) {
  const PadicContext& ctx = pt.context();
  const CycloPadic moved = change_context(value, ctx);
  const int g = std::min({bound, moved.precision(), ctx.precision()});
  LpResult r{moved.with_precision(g), g, moved.with_precision(ctx.precision()), route, 0, 0, {}, 0};
  return r;
}

struct WashingtonRaw {
  CycloPadic value;
  int tail;  // valuation bound of the dropped Bernoulli terms after scaling
};

WashingtonRaw washington_core(const EvalPoint& pt, std::uint64_t F, unsigned J, unsigned workers) {
  check_pole(pt);
  check_modulus(pt, F);
  const PadicContext& ctx = pt.context();
  const unsigned p = ctx.prime();
  const int vF = v_of(F, p);
  const BigRational t = 1 - pt.s();
  const int vt = t == 0 ? 0 : valuation(t, p);
  const int W = ctx.precision() + vF + vt;
  const PadicContext wctx(p, W);
  const DirichletCharacter& chi = pt.character();
  const unsigned m = chi.root_order();
  const auto k = static_cast<std::int64_t>(chi.teichmuller_power());
  const mpz_class Fz = static_cast<unsigned long>(F);

  CycloPadic total = with_ring(p, W, [&](const auto& ring) {
    using R = std::decay_t<decltype(ring)>;
    auto one = [](u64) -> std::int64_t { return 1; };
    CycloPadic acc(wctx, m);
    if (t != 0) {
      const auto scalar = ScalarTable<R>::power(ring, p, W, k, t, F);
      const auto sums = detail::character_sum(ring, F + 1, p, chi.exponent_table(), m, 0, J, scalar, one, workers);
      BigRational binom = 1;
      mpz_class Fj = 1;
      for (unsigned j = 0; j <= J; ++j) {
        if (j > 0) {
          binom *= (t - (j - 1)) / BigRational(j);
          Fj *= Fz;
        }
        const BigRational cj = binom * BigRational(Fj) * bernoulli_number(j);
        if (cj == 0) continue;
        acc += bucket_value(ring, sums, static_cast<std::size_t>(j) * m, m, wctx) *
               PadicNumber::from_rational(wctx, cj);
      }
      acc /= PadicNumber::from_rational(wctx, BigRational(Fz) * t);
    } else {
      // s = 1 with χ nontrivial: Σχ(a) = 0, so the j = 0 term tends to Σχ(a) log⟨a⟩
      // and C(t, j)/t tends to (-1)^(j-1)/j.
      const auto logs = ScalarTable<R>::log(ring, p, W, k, F);
      const auto lsum = detail::character_sum(ring, F + 1, p, chi.exponent_table(), m, 0, 0, logs, one, workers);
      acc += bucket_value(ring, lsum, 0, m, wctx);
      if (J >= 1) {
        const auto plain = ScalarTable<R>::power(ring, p, W, k, BigRational(0), F);
        const auto sums = detail::character_sum(ring, F + 1, p, chi.exponent_table(), m, 1, J, plain, one, workers);
        mpz_class Fj = 1;
        for (unsigned j = 1; j <= J; ++j) {
          Fj *= Fz;
          const BigRational cj = BigRational(j % 2 == 1 ? 1 : -1, j) * BigRational(Fj) * bernoulli_number(j);
          if (cj == 0) continue;
          acc += bucket_value(ring, sums, static_cast<std::size_t>(j - 1) * m, m, wctx) *
                 PadicNumber::from_rational(wctx, cj);
        }
      }
      acc /= PadicNumber::from_rational(wctx, BigRational(Fz));
    }
    return -acc;
  });

  const long long jn = J + 1;
  const long long first_dropped = jn * vF - (jn - 1) / static_cast<long long>(p == 2 ? 1 : p - 1) - 1;
  const int tail = static_cast<int>(std::min<long long>(first_dropped - vF - vt, kInfinity / 2));
  return {total, tail};
}

/// Σ χω^(-1)(a)⟨a⟩^(-s) w(a) for the ε weights (or the alternating weights)
/// at W digits, with the 1/2 of even c applied.
enum class Weights { epsilon, alternating };

CycloPadic series_core(const EvalPoint& pt, unsigned c, std::uint64_t F, const std::vector<unsigned>& S,
                       const PadicContext& wctx, unsigned workers, Weights kind) {
  check_modulus(pt, F);
  check_regularizer(c, F);
  check_euler_set(pt, F, S);
  const unsigned p = wctx.prime();
  const int W = wctx.precision();
  const DirichletCharacter& chi = pt.character();
  const unsigned m = chi.root_order();
  const auto k = static_cast<std::int64_t>(chi.teichmuller_power()) - 1;
  const auto f_inv = static_cast<u64>(mpz_class(
      [&] {
        mpz_class r;
        const mpz_class a = static_cast<unsigned long>(F % c), b = c;
        mpz_invert(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
        return r;
      }()).get_ui());
  const bool halve = c % 2 == 0 || kind == Weights::alternating;

  CycloPadic sum = with_ring(p, W, [&](const auto& ring) {
    using R = std::decay_t<decltype(ring)>;
    const auto scalar = ScalarTable<R>::power(ring, p, W, k, -pt.s(), F);
    auto weight = [&](u64 a) -> std::int64_t {
      for (unsigned l : S)
        if (a % l == 0) return 0;
      if (kind == Weights::alternating) return a % 2 == 0 ? -1 : 1;
      const u64 r = (c - (a % c) * f_inv % c) % c;
      const std::int64_t doubled = static_cast<std::int64_t>(c) - 1 - 2 * static_cast<std::int64_t>(r);
      return c % 2 == 0 ? doubled : doubled / 2;
    };
    const auto sums = detail::character_sum(ring, F, p, chi.exponent_table(), m, 0, 0, scalar, weight, workers);
    return bucket_value(ring, sums, 0, m, wctx);
  });
  if (halve) sum *= PadicNumber::from_rational(wctx, BigRational(1, 2));
  return sum.with_precision(W);
}

CycloPadic measure_core(const EvalPoint& pt, unsigned c, unsigned n, const PadicContext& wctx, unsigned workers) {
  const unsigned p = wctx.prime();
  const int W = wctx.precision();
  const std::uint64_t d = pt.tame_conductor();
  std::uint64_t F = d;
  for (unsigned i = 0; i < n; ++i) F *= p;
  check_modulus(pt, F);
  check_regularizer(c, F);
  const DirichletCharacter& chi = pt.character();
  const unsigned m = chi.root_order();
  const auto k = static_cast<std::int64_t>(chi.teichmuller_power()) - 1;
  std::vector<CycloPadic> roots;
  for (unsigned e = 0; e < m; ++e) roots.push_back(CycloPadic::root_of_unity(wctx, m, e));
  const auto& psi = chi.exponent_table();

  CycloPadic total = with_ring(p, W, [&](const auto& ring) {
    using R = std::decay_t<decltype(ring)>;
    const auto scalar = ScalarTable<R>::power(ring, p, W, k, -pt.s(), F);
    auto integrand = [&](u64 a) {
      const PadicNumber x = PadicNumber::from_residue(wctx, ring.to_mpz(scalar(a)), W);
      return roots[static_cast<unsigned>(psi[a % d])] * x;
    };
    return integrate(integrand, c, d, n, wctx, m, workers);
  });
  return total.with_precision(W);
}

CycloPadic regularization_core(const EvalPoint& pt, unsigned c, const PadicContext& wctx) {
  const unsigned p = wctx.prime();
  const int W = wctx.precision();
  const DirichletCharacter& chi = pt.character();
  const unsigned m = chi.root_order();
  const CycloPadic one = CycloPadic::root_of_unity(wctx, m, 0);
  const auto e = chi.abstract_exponent(static_cast<std::int64_t>(c));
  if (!e) return one;
  const auto teich = detail::teichmuller_residues(p, W);
  const mpz_class mod = ipow(p, W);
  mpz_class w;
  mpz_powm_ui(w.get_mpz_t(), teich[detail::teich_index(c, p)].get_mpz_t(), chi.teichmuller_power(),
              mod.get_mpz_t());
  const mpz_class ang = detail::principal_power(detail::angle_residue(c, p, W, teich), 1 - pt.s(), p, W);
  const PadicNumber scalar = PadicNumber::from_residue(wctx, w * ang, W);
  return one - CycloPadic::root_of_unity(wctx, m, *e) * scalar;
}

CycloPadic euler_factor_core(const EvalPoint& pt, unsigned l, const PadicContext& wctx) {
  const unsigned p = wctx.prime();
  if (l % p == 0) throw ConfigError("Euler factor at p is not defined");
  const int W = wctx.precision();
  const DirichletCharacter& chi = pt.character();
  const unsigned m = chi.root_order();
  const CycloPadic one = CycloPadic::root_of_unity(wctx, m, 0);
  const auto e = chi.abstract_exponent(static_cast<std::int64_t>(l));
  if (!e) return one;
  const auto teich = detail::teichmuller_residues(p, W);
  const mpz_class mod = ipow(p, W);
  const unsigned ord = omega_order(p);
  const unsigned k = (chi.teichmuller_power() + ord - 1) % ord;
  mpz_class w;
  mpz_powm_ui(w.get_mpz_t(), teich[detail::teich_index(l, p)].get_mpz_t(), k, mod.get_mpz_t());
  const mpz_class ang = detail::principal_power(detail::angle_residue(l, p, W, teich), -pt.s(), p, W);
  const PadicNumber scalar = PadicNumber::from_residue(wctx, w * ang, W);
  return one - CycloPadic::root_of_unity(wctx, m, *e) * scalar;
}

/// Solves sign · factor · L = sum for L, where factor is the regularization
/// factor times the listed Euler factors. The working precision is raised
/// by what inverting the factor costs.
template <class SumFn>
LpResult solve(const EvalPoint& pt, unsigned c, std::uint64_t F, const std::vector<unsigned>& S, SumFn&& sum_fn,
               Route route, bool negate) {
  check_pole(pt);
  check_modulus(pt, F);
  check_regularizer(c, F);
  check_euler_set(pt, F, S);
  const PadicContext& ctx = pt.context();
  const unsigned p = ctx.prime();
  const int N = ctx.precision();
  auto factor_at = [&](const PadicContext& wctx) {
    CycloPadic f = regularization_core(pt, c, wctx);
    for (unsigned l : S) f *= euler_factor_core(pt, l, wctx);
    return f;
  };
  const int W0 = N + 8;
  const CycloPadic probe = factor_at(PadicContext(p, W0)).inverse();
  const int loss = W0 - probe.precision();
  const int W = N + std::max({loss, -probe.valuation(), 0}) + 1;
  const PadicContext wctx(p, W);
  const CycloPadic inv = factor_at(wctx).inverse();
  CycloPadic value = sum_fn(wctx) * inv;
  if (negate) value = -value;
  const int bound = delta_bound(ctx, F) + inv.valuation();
  LpResult r = finish(value, bound, pt, route);
  r.F = F;
  r.c = c;
  r.euler_set = S;
  return r;
}

}  // namespace

EvalPoint::EvalPoint(const DirichletCharacter& chi, const BigRational& s, const PadicContext& ctx)
    : chi_(chi.attached(ctx).primitive()), s_(s), ctx_(ctx) {
  if (!chi_.is_even())
    throw ConfigError("character " + chi_.describe() +
                      " is odd; L_p(s, chi) vanishes identically for odd chi and is not evaluated");
  if (chi_.root_order() % ctx.prime() == 0)
    throw ConfigError("character order " + std::to_string(chi_.root_order()) + " is divisible by p = " +
                      std::to_string(ctx.prime()));
  if (s_ != 0 && valuation(s_, ctx.prime()) < 0)
    throw ConfigError("s = " + s_.get_str() + " lies outside the disc of convergence (v_p(s) < 0)");
}

std::string route_tag(Route r) {
  switch (r) {
    case Route::washington: return "washington";
    case Route::kl: return "kl";
    case Route::series: return "series";
    case Route::measure: return "measure";
    case Route::euler: return "euler";
  }
  return "?";
}

std::string LpResult::render() const {
  return "value=" + value.render() + " prec=p^" + std::to_string(guaranteed_precision) + " route=" + route_tag(route);
}

int delta_bound(const PadicContext& ctx, std::uint64_t F) {
  return v_of(F, ctx.prime()) - ctx.q_valuation() - 1;
}

int kl_tightened_bound(const PadicContext& ctx, std::uint64_t F) {
  if (ctx.prime() == 2) throw ConfigError("the sharpened error term is stated for odd p only");
  return v_of(F, ctx.prime()) - 1;
}

unsigned washington_terms(const PadicContext& ctx, std::uint64_t F, int target) {
  const unsigned p = ctx.prime();
  const long long vF = v_of(F, p);
  const long long step = p == 2 ? 1 : p - 1;
  for (long long J = 0;; ++J) {
    const long long j = J + 1;
    if (j * vF - (j - 1) / step - 1 >= target) return static_cast<unsigned>(J);
    if (J > 100000) throw ConfigError("Bernoulli series does not reach the target precision");
  }
}

LpResult lp_washington(const EvalPoint& pt, std::uint64_t F, std::optional<unsigned> jmax, unsigned workers) {
  const PadicContext& ctx = pt.context();
  const BigRational t = 1 - pt.s();
  const int vt = t == 0 ? 0 : valuation(t, ctx.prime());
  const int vF = v_of(F == 0 ? 1 : F, ctx.prime());
  const unsigned J = jmax ? *jmax : washington_terms(ctx, F, ctx.precision() + vF + vt);
  const WashingtonRaw raw = washington_core(pt, F, J, workers);
  LpResult r = finish(raw.value, raw.tail, pt, Route::washington);
  r.F = F;
  return r;
}

LpResult lp_kl_approx(const EvalPoint& pt, std::uint64_t F, unsigned workers) {
  const WashingtonRaw raw = washington_core(pt, F, 0, workers);
  LpResult r = finish(raw.value, delta_bound(pt.context(), F), pt, Route::kl);
  r.F = F;
  return r;
}

CycloPadic lp_dirichlet_series(const EvalPoint& pt, unsigned c, std::uint64_t F, unsigned workers) {
  return series_core(pt, c, F, {}, pt.context(), workers, Weights::epsilon);
}

CycloPadic euler_factored_series(const EvalPoint& pt, unsigned c, std::uint64_t F, const std::vector<unsigned>& S,
                                 unsigned workers) {
  return series_core(pt, c, F, S, pt.context(), workers, Weights::epsilon);
}

CycloPadic regularization_factor(const EvalPoint& pt, unsigned c) {
  return regularization_core(pt, c, pt.context());
}

CycloPadic euler_factor(const EvalPoint& pt, unsigned l) { return euler_factor_core(pt, l, pt.context()); }

LpResult lp_from_series(const EvalPoint& pt, unsigned c, std::uint64_t F, unsigned workers) {
  return solve(
      pt, c, F, {},
      [&](const PadicContext& wctx) { return series_core(pt, c, F, {}, wctx, workers, Weights::epsilon); },
      Route::series, true);
}

LpResult lp_euler(const EvalPoint& pt, unsigned c, std::uint64_t F, const std::vector<unsigned>& S,
                  unsigned workers) {
  return solve(
      pt, c, F, S, [&](const PadicContext& wctx) { return series_core(pt, c, F, S, wctx, workers, Weights::epsilon); },
      Route::euler, true);
}

CycloPadic measure_integral(const EvalPoint& pt, unsigned c, unsigned n, unsigned workers) {
  return measure_core(pt, c, n, pt.context(), workers);
}

LpResult lp_via_measure(const EvalPoint& pt, unsigned c, unsigned n, unsigned workers) {
  std::uint64_t F = pt.tame_conductor();
  for (unsigned i = 0; i < n; ++i) F *= pt.context().prime();
  LpResult r = solve(
      pt, c, F, {}, [&](const PadicContext& wctx) { return measure_core(pt, c, n, wctx, workers); },
      Route::measure, true);
  r.level = n;
  return r;
}

LpResult zeta_branch(int i, const BigRational& s, const PadicContext& ctx, unsigned c, std::uint64_t F,
                     unsigned workers) {
  const unsigned p = ctx.prime();
  if (p == 2) throw ConfigError("zeta branches are defined here for odd p only");
  if (i < 1 || i > static_cast<int>(p) - 2)
    throw ConfigError("branch index i = " + std::to_string(i) + " must lie in [1, p-2]");
  if (i % 2 == 0)
    throw ConfigError("branch index i = " + std::to_string(i) + " is even, so omega^(1-i) is odd");
  const EvalPoint pt(DirichletCharacter::trivial().twist(1 - i, ctx), s, ctx);
  if (c != 2) return lp_from_series(pt, c, F, workers);
  return solve(
      pt, c, F, {},
      [&](const PadicContext& wctx) { return series_core(pt, c, F, {}, wctx, workers, Weights::alternating); },
      Route::series, false);
}

CycloPadic interpolation_oracle(unsigned n, const DirichletCharacter& chi, const PadicContext& ctx) {
  if (n == 0) throw ConfigError("interpolation oracle needs n >= 1");
  const DirichletCharacter base = chi.attached(ctx).primitive();
  if (!base.is_even()) throw ConfigError("interpolation oracle needs an even character");
  const DirichletCharacter twisted = base.twist(-static_cast<std::int64_t>(n), ctx);
  const unsigned m = twisted.root_order();
  const unsigned p = ctx.prime();
  CycloPadic euler = CycloPadic::root_of_unity(ctx, m, 0);
  if (twisted.teichmuller_power() == 0) {
    if (const auto e = twisted.abstract_exponent(static_cast<std::int64_t>(p))) {
      euler -= CycloPadic::root_of_unity(ctx, m, *e) *
               PadicNumber::from_integer(ctx, ipow(p, static_cast<int>(n) - 1));
    }
  }
  CycloPadic value = euler * generalized_bernoulli(n, twisted, ctx);
  value /= PadicNumber::from_integer(ctx, static_cast<std::int64_t>(n));
  return -value;
}

}  // namespace padicl
