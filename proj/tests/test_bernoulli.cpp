#include <doctest.h>

#include "oracles.hpp"
#include "padicl/bernoulli.hpp"
#include "padicl/characters.hpp"

using namespace padicl;

TEST_SUITE("bernoulli") {
  TEST_CASE("fixtures") {
    CHECK(bernoulli_number(0) == 1);
    CHECK(bernoulli_number(1) == mpq_class(-1, 2));
    CHECK(bernoulli_number(2) == mpq_class(1, 6));
    CHECK(bernoulli_number(3) == 0);
    CHECK(bernoulli_number(12) == mpq_class(-691, 2730));
  }

  TEST_CASE("agreement with the Akiyama-Tanigawa table") {
    const auto table = oracle::bernoulli_table(80);
    for (unsigned j = 0; j <= 80; ++j) CHECK(bernoulli_number(j) == table[j]);
  }

  TEST_CASE("Bernoulli polynomials") {
    CHECK(bernoulli_polynomial(1, 0) == mpq_class(-1, 2));
    CHECK(bernoulli_polynomial(1, mpq_class(1, 2)) == 0);
    CHECK(bernoulli_polynomial(2, mpq_class(1, 6)) == mpq_class(1, 36));
    for (unsigned k = 0; k <= 12; ++k) {
      CHECK(bernoulli_polynomial(k, 0) == bernoulli_number(k));
      for (int num = -5; num <= 7; ++num) {
        mpq_class x(num, 3);
        x.canonicalize();
        // B_k(x + 1) - B_k(x) = k x^(k-1)
        mpq_class xk = 1;
        for (unsigned i = 1; i < k; ++i) xk *= x;
        CHECK(bernoulli_polynomial(k, x + 1) - bernoulli_polynomial(k, x) == (k == 0 ? mpq_class(0) : k * xk));
      }
    }
  }

  TEST_CASE("von Staudt-Clausen") {
    CHECK(von_staudt_valuation(4, 5) == StaudtClass::pole);
    CHECK(von_staudt_valuation(2, 7) == StaudtClass::integral);
    CHECK(von_staudt_valuation(6, 7) == StaudtClass::pole);
    CHECK_THROWS_AS(von_staudt_valuation(3, 5), ConfigError);
    for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u}) {
      for (unsigned j = 2; j <= 60; j += 2) {
        const bool pole = valuation(bernoulli_number(j), p) == -1;
        CHECK((von_staudt_valuation(j, p) == StaudtClass::pole) == pole);
      }
    }
  }

  TEST_CASE("digit sums and Legendre's formula") {
    CHECK(digit_sum(0, 7) == 0);
    CHECK(digit_sum(5, 5) == 1);
    CHECK(digit_sum(26, 5) == 2);
    for (unsigned p : {2u, 3u, 5u}) {
      mpz_class fact = 1;
      for (unsigned j = 1; j <= 60; ++j) {
        fact *= j;
        CHECK(factorial_valuation(j, p) == static_cast<std::uint64_t>(valuation(fact, p)));
        CHECK(factorial_valuation(j, p) == (j - digit_sum(j, p)) / (p - 1));
      }
    }
  }

  TEST_CASE("generalized Bernoulli numbers") {
    const PadicContext ctx(7, 12);
    auto scalar = [&](const mpq_class& x, unsigned m) { return CycloPadic::scalar(PadicNumber::from_rational(ctx, x), m); };
    const auto triv = DirichletCharacter::trivial();
    CHECK(generalized_bernoulli(2, triv, ctx) == scalar(mpq_class(1, 6), 1));
    CHECK(generalized_bernoulli(1, triv, ctx) == scalar(mpq_class(-1, 2), 1));
    CHECK_THROWS_AS(generalized_bernoulli(0, triv, ctx), ConfigError);
    const auto quad5 = DirichletCharacter::quadratic(5);
    for (unsigned n = 1; n <= 8; ++n) {
      mpq_class expected = 0;
      mpq_class f_pow = 1;
      for (unsigned i = 1; i < n; ++i) f_pow *= 5;
      for (int a = 1; a <= 5; ++a) expected += oracle::legendre(a, 5) * bernoulli_polynomial(n, mpq_class(a, 5));
      expected *= f_pow;
      expected.canonicalize();
      const auto got = generalized_bernoulli(n, quad5, ctx);
      CHECK(difference_valuation(got, scalar(expected, got.order())) >= got.precision());
      if (n == 2) CHECK(expected == mpq_class(4, 5));
    }
  }

  TEST_CASE("generalized Bernoulli numbers of odd characters vanish at even n") {
    const PadicContext ctx(5, 10);
    const auto chi = DirichletCharacter::from_generators(7, {{3, 1}}, 6);
    CHECK_FALSE(chi.is_even());
    for (unsigned n = 2; n <= 8; n += 2) CHECK(generalized_bernoulli(n, chi, ctx).is_zero());
  }
}
