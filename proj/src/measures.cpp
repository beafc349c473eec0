#include "padicl/measures.hpp"

#include <numeric>

#include "padicl/parallel.hpp"

namespace padicl {

namespace {

std::uint64_t inverse_mod(std::uint64_t x, std::uint64_t m) {
  mpz_class r;
  const mpz_class a = static_cast<unsigned long>(x % m), b = static_cast<unsigned long>(m);
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t()) == 0)
    throw ConfigError(std::to_string(x) + " is not invertible mod " + std::to_string(m));
  return r.get_ui();
}

BigRational ratio(std::uint64_t a, std::uint64_t m) {
  BigRational r(mpz_class(static_cast<unsigned long>(a)), mpz_class(static_cast<unsigned long>(m)));
  r.canonicalize();
  return r;
}

void check_regularizer(unsigned c, std::uint64_t d, unsigned p) {
  if (c < 2) throw ConfigError("regularization parameter c must be >= 2");
  if (std::gcd(static_cast<std::uint64_t>(c), d * p) != 1)
    throw ConfigError("regularization parameter c = " + std::to_string(c) + " is not coprime to d p = " +
                      std::to_string(d * p));
}

}  // namespace

MeasureBall::MeasureBall(std::uint64_t a, std::uint64_t d, unsigned n, unsigned p) : a_(a), d_(d), n_(n), p_(p) {
  if (d == 0 || d % p == 0) throw ConfigError("ball needs d >= 1 prime to p");
  modulus_ = d;
  for (unsigned i = 0; i < n; ++i) modulus_ *= p;
  if (a >= modulus_) throw ConfigError("ball residue must lie in [0, d p^n)");
}

BigRational EpsilonValue::value() const {
  BigRational r(static_cast<long>(doubled_), 2);
  r.canonicalize();
  return r;
}

std::uint64_t representative(std::int64_t x, std::uint64_t m) {
  const auto mm = static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(((x % mm) + mm) % mm);
}

EpsilonValue epsilon_coeff(std::int64_t a, unsigned c, std::uint64_t F) {
  if (c < 2) throw ConfigError("epsilon coefficient needs c >= 2");
  if (F == 0 || std::gcd(static_cast<std::uint64_t>(c), F) != 1)
    throw ConfigError("epsilon coefficient needs gcd(c, F) = 1 (c = " + std::to_string(c) +
                      ", F = " + std::to_string(F) + ")");
  const std::uint64_t f_inv = inverse_mod(F % c, c);
  const std::uint64_t r = representative(-static_cast<std::int64_t>(representative(a, c) * f_inv % c), c);
  return EpsilonValue(static_cast<std::int64_t>(c) - 1 - 2 * static_cast<std::int64_t>(r), c);
}

BigRational ek_value(const MeasureBall& ball, unsigned k) {
  if (k == 0) throw ConfigError("Bernoulli distribution E_k needs k >= 1");
  const std::uint64_t M = ball.modulus();
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), M, k - 1);
  return BigRational(scale) * bernoulli_polynomial(k, ratio(ball.residue(), M)) / BigRational(k);
}

BigRational e1c_value_by_definition(const MeasureBall& ball, unsigned c) {
  check_regularizer(c, ball.d(), ball.prime());
  const std::uint64_t M = ball.modulus();
  const std::uint64_t shifted = static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(ball.residue()) * inverse_mod(c, M)) % M);
  const MeasureBall image(shifted, ball.d(), ball.level(), ball.prime());
  return ek_value(ball, 1) - BigRational(c) * ek_value(image, 1);
}

EpsilonValue e1c_value_closed_form(const MeasureBall& ball, unsigned c) {
  check_regularizer(c, ball.d(), ball.prime());
  return epsilon_coeff(static_cast<std::int64_t>(ball.residue()), c, ball.modulus());
}

int alternating_measure(const MeasureBall& ball) {
  if (ball.prime() == 2 || ball.d() % 2 == 0)
    throw ConfigError("the alternating measure needs p odd and d odd");
  return ball.residue() % 2 == 0 ? 1 : -1;
}

CycloPadic integrate(const std::function<CycloPadic(std::uint64_t)>& f, unsigned c, std::uint64_t d, unsigned n,
                     const PadicContext& ctx, unsigned m, unsigned workers) {
  const unsigned p = ctx.prime();
  check_regularizer(c, d, p);
  const MeasureBall whole(0, d, n, p);
  const std::uint64_t M = whole.modulus();
  std::vector<PadicNumber> eps_values;
  for (std::int64_t twice = -(static_cast<std::int64_t>(c) - 1); twice <= static_cast<std::int64_t>(c) - 1; ++twice)
    eps_values.push_back(PadicNumber::from_rational(ctx, BigRational(static_cast<long>(twice), 2)));

  workers = std::max(1u, workers);
  std::vector<CycloPadic> partial(workers, CycloPadic(ctx, m));
  for_each_chunk(0, M, workers, [&](unsigned w, std::uint64_t lo, std::uint64_t hi) {
    CycloPadic acc(ctx, m);
    for (std::uint64_t a = lo; a < hi; ++a) {
      if (a % p == 0 || std::gcd(a, d) != 1) continue;
      const EpsilonValue eps = e1c_value_closed_form(MeasureBall(a, d, n, p), c);
      if (eps.doubled() == 0) continue;
      acc += f(a) * eps_values[eps.doubled() + c - 1];
    }
    partial[w] = std::move(acc);
  });
  CycloPadic total(ctx, m);
  for (const auto& part : partial) total += part;
  return total;
}

}  // namespace padicl
