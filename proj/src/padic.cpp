#include "padicl/padic.hpp"

#include <algorithm>
#include <sstream>

namespace padicl {

namespace {

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

mpz_class mod_pos(const mpz_class& x, const mpz_class& m) {
  mpz_class r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

mpz_class invert_mod(const mpz_class& x, const mpz_class& m) {
  mpz_class r;
  if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()) == 0)
    throw DomainError("element is not invertible modulo p^k");
  return r;
}

// Splits x = p^v * u with p not dividing u. x must be nonzero.
int split_power(mpz_class& x, unsigned p) {
  int v = 0;
  while (mpz_divisible_ui_p(x.get_mpz_t(), p)) {
    mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), p);
    ++v;
  }
  return v;
}

}  // namespace

int valuation(const mpz_class& x, unsigned p) {
  if (x == 0) return kInfinity;
  mpz_class y = x;
  return split_power(y, p);
}

int valuation(std::int64_t x, unsigned p) {
  if (x == 0) return kInfinity;
  int v = 0;
  while (x % static_cast<std::int64_t>(p) == 0) {
    x /= static_cast<std::int64_t>(p);
    ++v;
  }
  return v;
}

int valuation(const mpq_class& x, unsigned p) {
  if (x == 0) return kInfinity;
  return valuation(mpz_class(x.get_num()), p) - valuation(mpz_class(x.get_den()), p);
}

PadicContext::PadicContext(unsigned p, int precision) {
  if (!is_prime(p)) throw ConfigError("p = " + std::to_string(p) + " is not prime");
  if (precision < 4)
    throw ConfigError("working precision must be at least 4 digits, got " + std::to_string(precision));
  auto data = std::make_shared<Data>();
  data->p = p;
  data->q = p == 2 ? 4 : p;
  data->n = precision;
  const int cached = 4 * precision + 64;
  data->powers.reserve(cached + 1);
  mpz_class pk = 1;
  for (int k = 0; k <= cached; ++k) {
    data->powers.push_back(pk);
    pk *= p;
  }
  data_ = std::move(data);
}

const mpz_class& PadicContext::power(int k) const {
  if (k < 0) throw std::out_of_range("negative exponent in PadicContext::power");
  if (static_cast<std::size_t>(k) < data_->powers.size()) return data_->powers[k];
  thread_local mpz_class scratch;
  mpz_ui_pow_ui(scratch.get_mpz_t(), data_->p, static_cast<unsigned long>(k));
  return scratch;
}

PadicNumber::PadicNumber(const PadicContext& ctx) : ctx_(ctx) {}

void PadicNumber::normalize(mpz_class value, int base_valuation, int precision) {
  valuation_ = kInfinity;
  precision_ = precision;
  unit_ = 0;
  const int digits = precision - base_valuation;
  if (digits <= 0) return;
  value = mod_pos(value, ctx_.power(digits));
  if (value == 0) return;
  const int w = split_power(value, ctx_.prime());
  valuation_ = base_valuation + w;
  int rel = digits - w;
  if (rel > ctx_.precision()) {
    rel = ctx_.precision();
    precision_ = valuation_ + rel;
  }
  unit_ = mod_pos(value, ctx_.power(rel));
}

PadicNumber PadicNumber::from_integer(const PadicContext& ctx, const mpz_class& x) {
  PadicNumber r(ctx);
  if (x == 0) return r;
  mpz_class u = x;
  const int v = split_power(u, ctx.prime());
  r.valuation_ = v;
  r.precision_ = v + ctx.precision();
  r.unit_ = mod_pos(u, ctx.power(ctx.precision()));
  return r;
}

PadicNumber PadicNumber::from_integer(const PadicContext& ctx, std::int64_t x) {
  return from_integer(ctx, mpz_class(static_cast<long>(x)));
}

PadicNumber PadicNumber::from_rational(const PadicContext& ctx, const mpq_class& x) {
  PadicNumber r(ctx);
  if (x == 0) return r;
  mpz_class num = x.get_num();
  mpz_class den = x.get_den();
  const int v = split_power(num, ctx.prime()) - split_power(den, ctx.prime());
  const mpz_class& m = ctx.power(ctx.precision());
  r.valuation_ = v;
  r.precision_ = v + ctx.precision();
  r.unit_ = mod_pos(num * invert_mod(den, m), m);
  return r;
}

PadicNumber PadicNumber::from_residue(const PadicContext& ctx, const mpz_class& residue, int precision) {
  PadicNumber r(ctx);
  r.normalize(residue, 0, precision);
  return r;
}

PadicNumber PadicNumber::inexact_zero(const PadicContext& ctx, int precision) {
  PadicNumber r(ctx);
  r.precision_ = precision;
  return r;
}

int PadicNumber::relative_precision() const {
  if (is_zero()) return 0;
  return precision_ - valuation_;
}

mpz_class PadicNumber::residue(int k) const {
  if (k > precision_)
    throw PrecisionError("requested " + std::to_string(k) + " digits of a value known to " +
                         std::to_string(precision_));
  if (is_zero()) return 0;
  if (valuation_ < 0) throw DomainError("residue of a non-integral p-adic number");
  if (valuation_ >= k) return 0;
  return mod_pos(unit_ * ctx_.power(valuation_), ctx_.power(k));
}

PadicNumber PadicNumber::with_precision(int k) const {
  if (k >= precision_) return *this;
  PadicNumber r(ctx_);
  if (is_zero() || k <= valuation_) {
    r.precision_ = k;
    return r;
  }
  r.valuation_ = valuation_;
  r.precision_ = k;
  r.unit_ = mod_pos(unit_, ctx_.power(k - valuation_));
  return r;
}

PadicNumber PadicNumber::operator-() const {
  PadicNumber r = *this;
  if (!is_zero()) r.unit_ = mod_pos(-unit_, ctx_.power(relative_precision()));
  return r;
}

PadicNumber& PadicNumber::operator+=(const PadicNumber& o) {
  if (o.is_exact_zero()) return *this;
  if (is_exact_zero()) return *this = o;
  const int prec = std::min(precision_, o.precision_);
  const int vmin = std::min(valuation_, o.valuation_);
  if (vmin == kInfinity || prec <= vmin) {
    valuation_ = kInfinity;
    precision_ = prec;
    unit_ = 0;
    return *this;
  }
  mpz_class sum = 0;
  if (!is_zero()) sum += unit_ * ctx_.power(valuation_ - vmin);
  if (!o.is_zero()) sum += o.unit_ * ctx_.power(o.valuation_ - vmin);
  normalize(std::move(sum), vmin, prec);
  return *this;
}

PadicNumber& PadicNumber::operator-=(const PadicNumber& o) { return *this += -o; }

PadicNumber& PadicNumber::operator*=(const PadicNumber& o) {
  if (is_exact_zero() || o.is_exact_zero()) {
    *this = PadicNumber(ctx_);
    return *this;
  }
  if (is_zero() || o.is_zero()) {
    const int a = is_zero() ? precision_ : valuation_;
    const int b = o.is_zero() ? o.precision_ : o.valuation_;
    valuation_ = kInfinity;
    precision_ = a + b;
    unit_ = 0;
    return *this;
  }
  const int rel = std::min(relative_precision(), o.relative_precision());
  valuation_ += o.valuation_;
  precision_ = valuation_ + rel;
  unit_ = mod_pos(unit_ * o.unit_, ctx_.power(rel));
  return *this;
}

PadicNumber& PadicNumber::operator/=(const PadicNumber& o) {
  if (o.is_exact_zero()) throw DomainError("division by zero");
  if (o.is_zero())
    throw PrecisionError("division by a value indistinguishable from zero at precision p^" +
                         std::to_string(o.precision_));
  if (is_exact_zero()) return *this;
  if (is_zero()) {
    precision_ -= o.valuation_;
    return *this;
  }
  const int rel = std::min(relative_precision(), o.relative_precision());
  const mpz_class& m = ctx_.power(rel);
  valuation_ -= o.valuation_;
  precision_ = valuation_ + rel;
  unit_ = mod_pos(unit_ * invert_mod(o.unit_, m), m);
  return *this;
}

bool operator==(const PadicNumber& a, const PadicNumber& b) {
  return a.ctx_ == b.ctx_ && a.valuation_ == b.valuation_ && a.precision_ == b.precision_ &&
         a.unit_ == b.unit_;
}

std::string PadicNumber::render() const {
  std::ostringstream os;
  os << "v=";
  if (is_zero())
    os << "inf";
  else
    os << valuation_;
  os << " digits=";
  if (!is_zero()) {
    mpz_class u = unit_;
    const int rel = relative_precision();
    for (int i = 0; i < rel; ++i) {
      if (i) os << ',';
      os << mpz_fdiv_q_ui(u.get_mpz_t(), u.get_mpz_t(), ctx_.prime());
    }
  }
  os << " mod p^";
  if (precision_ == kInfinity)
    os << "inf";
  else
    os << precision_;
  return os.str();
}

int difference_valuation(const PadicNumber& a, const PadicNumber& b) {
  const PadicNumber d = a - b;
  return d.is_zero() ? d.precision() : d.valuation();
}

PadicNumber teichmuller(std::int64_t a, const PadicContext& ctx) {
  const unsigned p = ctx.prime();
  if (a % static_cast<std::int64_t>(p) == 0)
    throw ConfigError("Teichmüller character undefined at a = " + std::to_string(a) +
                      " divisible by p = " + std::to_string(p));
  if (p == 2) {
    const std::int64_t r = ((a % 4) + 4) % 4;
    return PadicNumber::from_integer(ctx, r == 1 ? 1 : -1);
  }
  // x_{k+1} = x_k^p mod p^{k+2}: each step gains one correct digit.
  mpz_class x = mod_pos(mpz_class(static_cast<long>(a)), ctx.power(1));
  for (int k = 1; k < ctx.precision(); ++k) {
    mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), p, ctx.power(k + 1).get_mpz_t());
  }
  return PadicNumber::from_residue(ctx, x, ctx.precision());
}

PadicNumber angle(std::int64_t a, const PadicContext& ctx) {
  return PadicNumber::from_integer(ctx, a) / teichmuller(a, ctx);
}

PadicNumber binom_padic(const PadicNumber& s, unsigned j) {
  const PadicContext& ctx = s.context();
  PadicNumber num = PadicNumber::from_integer(ctx, 1);
  mpz_class fact = 1;
  for (unsigned i = 0; i < j; ++i) {
    num *= s - PadicNumber::from_integer(ctx, static_cast<std::int64_t>(i));
    fact *= i + 1;
  }
  return num / PadicNumber::from_integer(ctx, fact);
}

bool is_admissible_exponent(const PadicNumber& s) {
  if (s.is_zero()) return s.precision() >= 0;
  return s.valuation() >= 0;
}

unsigned binomial_series_terms(int w, unsigned p, int target) {
  if (w <= 0) throw DomainError("binomial series needs v_p(u - 1) >= 1");
  unsigned k = 1;
  for (;; ++k) {
    const long long bound =
        static_cast<long long>(k) * w - static_cast<long long>((k - 1) / (p - 1));
    if (bound >= target) return k;
  }
}

PadicNumber power_st(const PadicNumber& u, const PadicNumber& s) {
  const PadicContext& ctx = u.context();
  const PadicNumber one = PadicNumber::from_integer(ctx, 1);
  const PadicNumber d = u - one;
  const int w = d.is_zero() ? d.precision() : d.valuation();
  if (w < ctx.q_valuation())
    throw ConfigError("power_st: base is not congruent to 1 mod q");
  if (!is_admissible_exponent(s))
    throw ConfigError("power_st: exponent outside the disc |s| < q p^(-1/(p-1))");
  const int target = ctx.precision();
  const unsigned terms = binomial_series_terms(w, ctx.prime(), target);
  PadicNumber sum = one;
  PadicNumber dk = one;
  for (unsigned k = 1; k < terms; ++k) {
    dk *= d;
    sum += binom_padic(s, k) * dk;
  }
  return sum.with_precision(target);
}

PadicNumber power_st(const PadicNumber& u, std::int64_t n) {
  const PadicContext& ctx = u.context();
  PadicNumber result = PadicNumber::from_integer(ctx, 1);
  PadicNumber base = u;
  std::uint64_t e = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  if (n < 0) result = PadicNumber::from_integer(ctx, 1) / result;
  return result;
}

}  // namespace padicl

namespace padicl {

PadicNumber change_context(const PadicNumber& x, const PadicContext& to) {
  if (x.context().prime() != to.prime()) throw ConfigError("change_context needs the same prime");
  if (x.is_exact_zero()) return PadicNumber(to);
  if (x.is_zero()) return PadicNumber::inexact_zero(to, x.precision());
  const int rel = std::min(x.relative_precision(), to.precision());
  PadicNumber y = PadicNumber::from_residue(to, x.unit(), rel);
  const int v = x.valuation();
  if (v > 0) y *= PadicNumber::from_integer(to, to.power(v));
  if (v < 0) y /= PadicNumber::from_integer(to, to.power(-v));
  return y;
}

}  // namespace padicl
