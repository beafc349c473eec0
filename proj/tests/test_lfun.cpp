#include <doctest.h>

#include "oracles.hpp"
#include "padicl/lfun.hpp"

using namespace padicl;

namespace {

CycloPadic rational(const PadicContext& ctx, const mpq_class& x, unsigned m) {
  return CycloPadic::scalar(PadicNumber::from_rational(ctx, x), m);
}

EvalPoint point(const PadicContext& ctx, const std::string& chi, const mpq_class& s) {
  return EvalPoint(parse_character(chi, ctx), s, ctx);
}

bool agrees(const LpResult& r, const CycloPadic& expected, int digits) {
  return r.guaranteed_precision >= digits && difference_valuation(r.value, expected) >= digits;
}

}  // namespace

TEST_SUITE("lfun") {
  TEST_CASE("evaluation point validation") {
    const PadicContext ctx(5, 10);
    CHECK_THROWS_WITH_AS(point(ctx, "teich:1", 0), doctest::Contains("odd"), ConfigError);
    CHECK_THROWS_AS(point(ctx, "teich:2", mpq_class(1, 5)), ConfigError);
    CHECK_THROWS_AS(point(ctx, "gens:11:2^1:5", 0), ConfigError);
    CHECK_NOTHROW(point(ctx, "teich:2", mpq_class(1, 3)));
    CHECK(point(ctx, "teich:0", 1).has_pole());
    const PadicContext c2(2, 10);
    CHECK_THROWS_AS(point(c2, "teich:0", mpq_class(1, 2)), ConfigError);
    CHECK_NOTHROW(point(c2, "teich:0", 2));
  }

  TEST_CASE("bounds") {
    const PadicContext c5(5, 10), c2(2, 10);
    CHECK(delta_bound(c5, 625) == 2);
    CHECK(delta_bound(c5, 3125) == 3);
    CHECK(delta_bound(c2, 64) == 3);
    CHECK(kl_tightened_bound(c5, 625) == 3);
    CHECK_THROWS_AS(kl_tightened_bound(c2, 64), ConfigError);
    CHECK(washington_terms(c5, 625, 10) <= washington_terms(c5, 625, 20));
    CHECK(washington_terms(c5, 3125, 20) <= washington_terms(c5, 625, 20));
  }

  TEST_CASE("L_5(-1, omega^2) = 1/3 by every route") {
    const PadicContext ctx(5, 20);
    const auto pt = point(ctx, "teich:2", -1);
    const auto third = rational(ctx, mpq_class(1, 3), pt.ring_order());
    const auto series = lp_from_series(pt, 2, 625);
    CHECK(agrees(series, third, 2));
    CHECK(series.value.coefficient(0).residue(2) == 17);
    CHECK(agrees(lp_from_series(pt, 3, 625), third, 2));
    CHECK(agrees(lp_via_measure(pt, 2, 4), third, 2));
    CHECK(agrees(lp_kl_approx(pt, 3125), third, 3));
    CHECK(agrees(lp_washington(pt, 20), third, 2));
    CHECK(agrees(lp_washington(pt, 625), third, 15));
    CHECK(series.render().rfind("value=[v=0 digits=2,3 mod p^2] prec=p^2 route=series", 0) == 0);
  }

  TEST_CASE("pole and non-invertible factors") {
    const PadicContext ctx(5, 12);
    const auto pt = point(ctx, "teich:0", 1);
    CHECK_THROWS_AS(lp_washington(pt, 125), DomainError);
    CHECK_THROWS_AS(lp_from_series(pt, 2, 125), DomainError);
    const auto pt0 = point(ctx, "teich:2", 0);
    CHECK_THROWS_AS(lp_from_series(pt0, 5, 125), ConfigError);
    CHECK_THROWS_AS(lp_from_series(pt0, 1, 125), ConfigError);
    CHECK_THROWS_AS(lp_washington(pt0, 126), ConfigError);
  }

  TEST_CASE("measure and series agree bit for bit before the solve") {
    for (unsigned p : {3u, 5u, 7u}) {
      const PadicContext ctx(p, 16);
      for (const char* chi : {"teich:0", "teich:2", "quad:13"}) {
        for (int s : {0, -1, 2}) {
          const auto pt = point(ctx, chi, s);
          for (unsigned c : {2u, 4u}) {
            for (unsigned n = 2; n <= 3; ++n) {
              std::uint64_t F = pt.tame_conductor();
              for (unsigned i = 0; i < n; ++i) F *= p;
              CHECK(measure_integral(pt, c, n) == lp_dirichlet_series(pt, c, F));
            }
          }
        }
      }
    }
  }

  TEST_CASE("series at two moduli with equal residue mod c and equal p-power") {
    const PadicContext ctx(5, 16);
    const auto pt = point(ctx, "teich:2", mpq_class(2, 3));
    const auto a = lp_dirichlet_series(pt, 2, 625);
    const auto b = lp_dirichlet_series(pt, 2, 625 * 3);
    CHECK(difference_valuation(a, b) >= delta_bound(ctx, 625));
  }

  TEST_CASE("c-independence") {
    for (unsigned p : {3u, 5u, 7u}) {
      const PadicContext ctx(p, 16);
      const auto pt = point(ctx, "quad:13", mpq_class(1, 2));
      std::uint64_t F = 13;
      for (int i = 0; i < 4; ++i) F *= p;
      const int B = delta_bound(ctx, F);
      const auto r2 = lp_from_series(pt, 2, F);
      for (unsigned c : {4u, 8u, 11u}) {
        if (c % p == 0) continue;
        CHECK(difference_valuation(r2.working_value, lp_from_series(pt, c, F).working_value) >= B);
      }
    }
  }

  TEST_CASE("sharpened Kubota-Leopoldt bound for odd p") {
    for (unsigned p : {3u, 5u, 7u}) {
      const PadicContext ctx(p, 16);
      for (int s : {0, 1, -1, 2}) {
        const auto pt = point(ctx, "teich:2", s);
        if (pt.has_pole()) continue;
        for (unsigned n = 2; n <= 4; ++n) {
          std::uint64_t F = pt.conductor();
          for (unsigned i = 0; i < n; ++i) F *= p;
          const auto w = lp_washington(pt, F);
          const auto k = lp_kl_approx(pt, F);
          CHECK(difference_valuation(w.working_value, k.working_value) >= kl_tightened_bound(ctx, F));
        }
      }
    }
  }

  TEST_CASE("Euler peeling") {
    const PadicContext ctx(5, 16);
    for (int s : {0, 1, -1}) {
      const auto pt = point(ctx, "teich:2", s);
      for (unsigned l : {3u, 7u, 11u}) {
        const std::uint64_t F = 625 * l;
        const int B = delta_bound(ctx, F);
        const auto full = lp_dirichlet_series(pt, 2, F);
        CHECK(euler_factored_series(pt, 2, F, {}) == full);
        const auto peeled = euler_factored_series(pt, 2, F, {l});
        CHECK(difference_valuation(peeled, euler_factor(pt, l) * full) >= B);
      }
      const std::uint64_t F = 625 * 21;
      const auto both = euler_factored_series(pt, 2, F, {3, 7});
      const auto via3 = euler_factor(pt, 7) * euler_factored_series(pt, 2, F, {3});
      const auto via7 = euler_factor(pt, 3) * euler_factored_series(pt, 2, F, {7});
      CHECK(difference_valuation(both, via3) >= delta_bound(ctx, F));
      CHECK(difference_valuation(both, via7) >= delta_bound(ctx, F));
      const auto solved = lp_euler(pt, 2, F, {3, 7});
      CHECK(difference_valuation(solved.working_value, lp_from_series(pt, 2, F).working_value) >= delta_bound(ctx, F));
    }
    const auto pt = point(ctx, "teich:2", 0);
    CHECK_THROWS_AS(euler_factored_series(pt, 2, 625 * 3, {5}), ConfigError);
    CHECK_THROWS_AS(euler_factored_series(pt, 2, 625, {3}), ConfigError);
  }

  TEST_CASE("zeta branches") {
    const PadicContext ctx(5, 16);
    const auto third = rational(ctx, mpq_class(1, 3), 1);
    const auto z = zeta_branch(3, -1, ctx, 2, 625);
    CHECK(agrees(z, third, 2));
    CHECK(agrees(zeta_branch(3, -1, ctx, 3, 625), third, 2));
    CHECK_THROWS_AS(zeta_branch(2, -1, ctx, 2, 625), ConfigError);
    CHECK_THROWS_AS(zeta_branch(5, -1, ctx, 2, 625), ConfigError);
    const PadicContext c3(3, 16);
    const auto alt = zeta_branch(1, 2, c3, 2, 243);
    const auto pt = point(c3, "teich:0", 2);
    const int B = delta_bound(c3, 243);
    CHECK(difference_valuation(alt.working_value, lp_washington(pt, 243).working_value) >= B);
    CHECK(difference_valuation(alt.working_value, lp_from_series(pt, 2, 243).working_value) >= B);
    CHECK_THROWS_AS(zeta_branch(1, 2, PadicContext(2, 8), 3, 64), ConfigError);
  }

  TEST_CASE("interpolation oracle fixtures") {
    const PadicContext ctx(5, 16);
    const auto w2 = parse_character("teich:2", ctx);
    CHECK(interpolation_oracle(2, w2, ctx) == rational(ctx, mpq_class(1, 3), 1));
    const auto w = parse_character("teich:1", ctx);
    const auto b1 = generalized_bernoulli(1, w, ctx);
    CHECK(interpolation_oracle(1, w2, ctx) == -b1);
  }

  TEST_CASE("interpolation at s = 1 - n") {
    for (unsigned p : {3u, 5u, 7u}) {
      const PadicContext ctx(p, 20);
      for (unsigned k = 0; k + 1 < p; k += 2) {
        const std::string spec = "teich:" + std::to_string(k);
        const auto chi = parse_character(spec, ctx);
        for (unsigned n = 1; n <= 6; ++n) {
          const auto pt = point(ctx, spec, 1 - static_cast<int>(n));
          std::uint64_t F = pt.conductor();
          while (delta_bound(ctx, F) < 4) F *= p;
          const auto r = lp_from_series(pt, 2, F);
          const auto expected = interpolation_oracle(n, chi, ctx);
          const int target = std::min(r.guaranteed_precision, expected.precision());
          CHECK(difference_valuation(r.value, expected) >= target);
        }
      }
    }
  }

  TEST_CASE("guaranteed precision grows with v_p(F)") {
    const PadicContext ctx(7, 20);
    const auto pt = point(ctx, "teich:4", mpq_class(3, 2));
    int last = -1000;
    for (std::uint64_t F = 7; F <= 7 * 7 * 7 * 7; F *= 7) {
      const auto r = lp_from_series(pt, 2, F);
      CHECK(r.guaranteed_precision >= last);
      last = r.guaranteed_precision;
    }
  }

  TEST_CASE("results do not depend on the worker count") {
    const PadicContext ctx(5, 20);
    const auto pt = point(ctx, "quad:13", mpq_class(-1, 3));
    const std::uint64_t F = 13 * 625;
    const auto w1 = lp_washington(pt, F, std::nullopt, 1);
    const auto s1 = lp_from_series(pt, 3, F, 1);
    for (unsigned workers : {2u, 3u, 8u}) {
      CHECK(lp_washington(pt, F, std::nullopt, workers).working_value == w1.working_value);
      CHECK(lp_from_series(pt, 3, F, workers).working_value == s1.working_value);
    }
  }

  TEST_CASE("p = 2") {
    const PadicContext ctx(2, 20);
    const auto pt = point(ctx, "teich:0", -1);
    const auto expected = interpolation_oracle(2, parse_character("teich:0", ctx), ctx);
    const auto r = lp_from_series(pt, 3, 256);
    CHECK(r.guaranteed_precision == delta_bound(ctx, 256) - 3);
    CHECK(difference_valuation(r.value, expected) >= r.guaranteed_precision);
    const auto w = lp_washington(pt, 256);
    CHECK(difference_valuation(w.working_value, r.working_value) >= delta_bound(ctx, 256));
  }
}
