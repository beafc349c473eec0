#include "padicl/cyclo.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace padicl {

namespace {

using Poly = std::vector<std::int64_t>;

// Exact division of integer polynomials by a monic divisor.
Poly divide_monic(Poly num, const Poly& den) {
  const std::size_t dn = den.size() - 1;
  Poly quot(num.size() - dn, 0);
  for (std::size_t k = num.size(); k-- > dn;) {
    const std::int64_t c = num[k];
    quot[k - dn] = c;
    for (std::size_t i = 0; i <= dn; ++i) num[k - dn + i] -= c * den[i];
  }
  return quot;
}

Poly cyclotomic(unsigned m, std::map<unsigned, Poly>& memo) {
  if (auto it = memo.find(m); it != memo.end()) return it->second;
  Poly num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (unsigned d = 1; d < m; ++d)
    if (m % d == 0) num = divide_monic(num, cyclotomic(d, memo));
  memo[m] = num;
  return num;
}

}  // namespace

CyclotomicModulus::CyclotomicModulus(unsigned m) : m_(m) {
  std::map<unsigned, Poly> memo;
  phi_ = cyclotomic(m, memo);
  const unsigned deg = degree();
  Poly cur(deg, 0);
  cur[0] = 1;
  powers_.reserve(m);
  for (unsigned e = 0; e < m; ++e) {
    powers_.push_back(cur);
    // multiply by x and reduce the overflowing coefficient with Φ_m
    const std::int64_t top = cur[deg - 1];
    for (unsigned i = deg - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    for (unsigned i = 0; i < deg; ++i) cur[i] -= top * phi_[i];
  }
}

std::shared_ptr<const CyclotomicModulus> CyclotomicModulus::get(unsigned m) {
  if (m == 0) throw ConfigError("cyclotomic order must be positive");
  static std::mutex mutex;
  static std::map<unsigned, std::shared_ptr<const CyclotomicModulus>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[m];
  if (!slot) slot.reset(new CyclotomicModulus(m));
  return slot;
}

CycloPadic::CycloPadic(const PadicContext& ctx, unsigned m)
    : ctx_(ctx), modulus_(CyclotomicModulus::get(m)), coeffs_(modulus_->degree(), PadicNumber(ctx)) {}

CycloPadic CycloPadic::scalar(const PadicNumber& value, unsigned m) {
  CycloPadic r(value.context(), m);
  r.coeffs_[0] = value;
  return r;
}

CycloPadic CycloPadic::root_of_unity(const PadicContext& ctx, unsigned m, std::int64_t e) {
  CycloPadic r(ctx, m);
  const std::int64_t mm = m;
  const auto& pw = r.modulus_->root_power(static_cast<unsigned>(((e % mm) + mm) % mm));
  for (unsigned i = 0; i < r.degree(); ++i)
    if (pw[i] != 0) r.coeffs_[i] = PadicNumber::from_integer(ctx, pw[i]);
  return r;
}

CycloPadic CycloPadic::from_coefficients(std::vector<PadicNumber> coeffs, unsigned m) {
  if (coeffs.empty()) throw ConfigError("CycloPadic needs at least one coefficient");
  CycloPadic r(coeffs.front().context(), m);
  if (coeffs.size() != r.degree())
    throw ConfigError("coefficient count does not match deg Φ_" + std::to_string(m));
  r.coeffs_ = std::move(coeffs);
  return r;
}

int CycloPadic::valuation() const {
  int v = kInfinity;
  for (const auto& c : coeffs_) v = std::min(v, c.valuation());
  return v;
}

int CycloPadic::precision() const {
  int v = kInfinity;
  for (const auto& c : coeffs_) v = std::min(v, c.precision());
  return v;
}

bool CycloPadic::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const PadicNumber& c) { return c.is_zero(); });
}

void CycloPadic::check_compatible(const CycloPadic& o) const {
  if (order() != o.order())
    throw ConfigError("mixing Z_p[ζ_" + std::to_string(order()) + "] with Z_p[ζ_" +
                      std::to_string(o.order()) + "]");
  if (!(ctx_ == o.ctx_)) throw ConfigError("mixing p-adic contexts");
}

CycloPadic CycloPadic::operator-() const {
  CycloPadic r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CycloPadic& CycloPadic::operator+=(const CycloPadic& o) {
  check_compatible(o);
  for (unsigned i = 0; i < degree(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

CycloPadic& CycloPadic::operator-=(const CycloPadic& o) {
  check_compatible(o);
  for (unsigned i = 0; i < degree(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

CycloPadic& CycloPadic::operator*=(const CycloPadic& o) {
  check_compatible(o);
  const unsigned deg = degree();
  std::vector<PadicNumber> prod(2 * deg - 1, PadicNumber(ctx_));
  for (unsigned i = 0; i < deg; ++i) {
    if (coeffs_[i].is_exact_zero()) continue;
    for (unsigned j = 0; j < deg; ++j) {
      if (o.coeffs_[j].is_exact_zero()) continue;
      prod[i + j] += coeffs_[i] * o.coeffs_[j];
    }
  }
  std::vector<PadicNumber> out(deg, PadicNumber(ctx_));
  for (unsigned k = 0; k < prod.size(); ++k) {
    if (prod[k].is_exact_zero()) continue;
    if (k < deg) {
      out[k] += prod[k];
      continue;
    }
    const auto& pw = modulus_->root_power(k);
    for (unsigned i = 0; i < deg; ++i)
      if (pw[i] != 0) out[i] += prod[k] * PadicNumber::from_integer(ctx_, pw[i]);
  }
  coeffs_ = std::move(out);
  return *this;
}

CycloPadic& CycloPadic::operator*=(const PadicNumber& s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

CycloPadic& CycloPadic::operator/=(const PadicNumber& s) {
  for (auto& c : coeffs_) c /= s;
  return *this;
}

CycloPadic CycloPadic::inverse() const {
  const unsigned deg = degree();
  // Column j of the matrix holds the coefficients of this * x^j.
  std::vector<std::vector<PadicNumber>> a(deg, std::vector<PadicNumber>(deg + 1, PadicNumber(ctx_)));
  CycloPadic col = *this;
  const CycloPadic x = root_of_unity(ctx_, order(), 1);
  for (unsigned j = 0; j < deg; ++j) {
    for (unsigned i = 0; i < deg; ++i) a[i][j] = col.coeffs_[i];
    if (j + 1 < deg) col *= x;
  }
  a[0][deg] = PadicNumber::from_integer(ctx_, 1);

  for (unsigned c = 0; c < deg; ++c) {
    unsigned best = deg;
    for (unsigned r = c; r < deg; ++r) {
      if (a[r][c].is_zero()) continue;
      if (best == deg || a[r][c].valuation() < a[best][c].valuation()) best = r;
    }
    if (best == deg)
      throw DomainError("non-invertible element of Z_p[ζ_" + std::to_string(order()) +
                        "]: multiplication matrix is singular at the working precision");
    std::swap(a[c], a[best]);
    for (unsigned r = 0; r < deg; ++r) {
      if (r == c || a[r][c].is_exact_zero()) continue;
      const PadicNumber factor = a[r][c] / a[c][c];
      for (unsigned k = c; k <= deg; ++k) a[r][k] -= factor * a[c][k];
    }
  }
  std::vector<PadicNumber> y;
  y.reserve(deg);
  for (unsigned i = 0; i < deg; ++i) y.push_back(a[i][deg] / a[i][i]);
  return from_coefficients(std::move(y), order());
}

PadicNumber CycloPadic::embed(const PadicNumber& root) const {
  PadicNumber acc(ctx_);
  for (unsigned i = degree(); i-- > 0;) acc = acc * root + coeffs_[i];
  return acc;
}

CycloPadic CycloPadic::with_precision(int k) const {
  CycloPadic r = *this;
  for (auto& c : r.coeffs_) c = c.with_precision(k);
  return r;
}

bool operator==(const CycloPadic& a, const CycloPadic& b) {
  return a.order() == b.order() && a.coeffs_ == b.coeffs_;
}

std::string CycloPadic::render() const {
  std::ostringstream os;
  os << '[';
  for (unsigned i = 0; i < degree(); ++i) {
    if (i) os << " ; ";
    os << coeffs_[i].render();
  }
  os << ']';
  return os.str();
}

int difference_valuation(const CycloPadic& a, const CycloPadic& b) {
  const CycloPadic d = a - b;
  int v = kInfinity;
  for (const auto& c : d.coefficients()) v = std::min(v, c.is_zero() ? c.precision() : c.valuation());
  return v;
}

}  // namespace padicl

namespace padicl {

CycloPadic change_context(const CycloPadic& x, const PadicContext& to) {
  std::vector<PadicNumber> coeffs;
  coeffs.reserve(x.degree());
  for (const auto& c : x.coefficients()) coeffs.push_back(change_context(c, to));
  return CycloPadic::from_coefficients(std::move(coeffs), x.order());
}

}  // namespace padicl
