// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "padicl/cli.hpp"
#include "padicl/lfun.hpp"
#include "padicl/measures.hpp"

using namespace padicl;

namespace {

unsigned g_workers = 1;

struct Report {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void fail(const std::string& what) {
    pass = false;
    if (failures.size() < 10) failures.push_back(what);
  }
};

std::vector<std::uint64_t> first_primes_not_dividing(std::uint64_t x, unsigned count) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; out.size() < count; ++q) {
    bool prime = true;
    for (std::uint64_t r = 2; r * r <= q; ++r) prime = prime && q % r != 0;
    if (prime && x % q != 0) out.push_back(q);
  }
  return out;
}

template <class Visit>
void measure_grid(Visit visit) {
  for (unsigned c : {2u, 3u, 5u, 7u, 11u}) {
    for (unsigned p : {2u, 3u, 5u, 7u}) {
      if (c == p) continue;
      std::vector<std::uint64_t> ds{1};
      for (auto q : first_primes_not_dividing(std::uint64_t{c} * p, 2)) ds.push_back(q);
      for (auto d : ds) visit(c, p, d);
    }
  }
}

Report theorem3_equality() {
  Report r;
  std::uint64_t balls = 0;
  measure_grid([&](unsigned c, unsigned p, std::uint64_t d) {
    for (std::uint64_t M = d, n = 0; M <= 2000; M *= p, ++n) {
      for (std::uint64_t a = 0; a < M; ++a) {
        const MeasureBall ball(a, d, static_cast<unsigned>(n), p);
        ++balls;
        if (e1c_value_by_definition(ball, c) != e1c_value_closed_form(ball, c).value())
          r.fail("c=" + std::to_string(c) + " p=" + std::to_string(p) + " d=" + std::to_string(d) +
                 " n=" + std::to_string(n) + " a=" + std::to_string(a));
      }
    }
  });
  r.detail = std::to_string(balls) + " balls";
  return r;
}

Report distribution_relations() {
  Report r;
  std::uint64_t steps = 0;
  measure_grid([&](unsigned c, unsigned p, std::uint64_t d) {
    for (std::uint64_t M = d, n = 0; M * p <= 2000; M *= p, ++n) {
      for (std::uint64_t a = 0; a < M; ++a) {
        const MeasureBall ball(a, d, static_cast<unsigned>(n), p);
        BigRational s1 = 0, s2 = 0, s1c = 0;
        for (std::uint64_t b = a; b < M * p; b += M) {
          const MeasureBall child(b, d, static_cast<unsigned>(n + 1), p);
          s1 += ek_value(child, 1);
          s2 += ek_value(child, 2);
          s1c += e1c_value_by_definition(child, c);
        }
        ++steps;
        const std::string where = "c=" + std::to_string(c) + " p=" + std::to_string(p) + " d=" + std::to_string(d) +
                                  " n=" + std::to_string(n) + " a=" + std::to_string(a);
        if (s1 != ek_value(ball, 1)) r.fail("E_1 " + where);
        if (s2 != ek_value(ball, 2)) r.fail("E_2 " + where);
        if (s1c != e1c_value_by_definition(ball, c)) r.fail("E_1c " + where);
      }
    }
  });
  r.detail = std::to_string(steps) + " refinement steps, 3 distributions each";
  return r;
}

std::vector<BigRational> eps_row(unsigned c, std::uint64_t F) {
  std::vector<BigRational> row;
  for (unsigned a = 0; a < c; ++a) row.push_back(epsilon_coeff(a, c, F).value());
  return row;
}

std::vector<BigRational> row_of(std::initializer_list<BigRational> xs) { return xs; }

Report epsilon_fixtures() {
  Report r;
  int tables = 0;
  for (std::uint64_t F = 1; F <= 400; ++F) {
    if (F % 2 == 1) {
      ++tables;
      if (eps_row(2, F) != row_of({BigRational(1, 2), BigRational(-1, 2)})) r.fail("c=2 F=" + std::to_string(F));
    }
    if (F % 3 == 1) {
      ++tables;
      if (eps_row(3, F) != row_of({1, -1, 0})) r.fail("c=3 F=" + std::to_string(F));
    }
    if (F % 3 == 2) {
      ++tables;
      if (eps_row(3, F) != row_of({1, 0, -1})) r.fail("c=3 F=" + std::to_string(F));
    }
    if (F % 7 == 3) {
      ++tables;
      if (eps_row(7, F) != row_of({3, 1, -1, -3, 2, 0, -2})) r.fail("c=7 F=" + std::to_string(F));
    }
    if (F % 5 != 0) {
      ++tables;
      const auto row = eps_row(5, F);
      const std::multiset<BigRational> rest(row.begin() + 1, row.end());
      if (row[0] != 2 || rest != std::multiset<BigRational>{-2, -1, 0, 1}) r.fail("c=5 F=" + std::to_string(F));
    }
  }
  r.detail = std::to_string(tables) + " tables";
  return r;
}

std::uint64_t times_power(std::uint64_t f, unsigned p, unsigned n) {
  for (unsigned i = 0; i < n; ++i) f *= p;
  return f;
}

std::vector<std::string> even_teichmuller_powers(unsigned p) {
  std::vector<std::string> out;
  for (unsigned k = 0; k + 1 < p; k += 2) out.push_back("teich:" + std::to_string(k));
  return out;
}

Report cross_route_agreement() {
  Report r;
  int points = 0, pairs = 0, poles = 0;
  for (unsigned p : {3u, 5u, 7u}) {
    const PadicContext ctx(p, 20);
    auto chars = even_teichmuller_powers(p);
    for (std::uint64_t f : {5u, 7u})
      if (f % 4 == 1) chars.push_back("quad:" + std::to_string(f));
    for (const auto& spec : chars) {
      for (int s : {0, 1, -1, 2, 5}) {
        const EvalPoint pt(parse_character(spec, ctx), BigRational(s), ctx);
        if (pt.has_pole()) {
          ++poles;
          continue;
        }
        for (unsigned n : {3u, 4u, 5u}) {
          const std::uint64_t F = times_power(pt.conductor(), p, n);
          unsigned level = n;
          for (std::uint64_t f = pt.conductor(); f % p == 0; f /= p) ++level;
          const int B = delta_bound(ctx, F);
          std::vector<LpResult> results;
          try {
            results.push_back(lp_washington(pt, F, std::nullopt, g_workers));
            results.push_back(lp_kl_approx(pt, F, g_workers));
            for (unsigned c : {2u, 3u}) {
              if (std::gcd<std::uint64_t>(c, F) != 1) continue;
              results.push_back(lp_from_series(pt, c, F, g_workers));
              results.push_back(lp_via_measure(pt, c, level, g_workers));
            }
          } catch (const std::exception& e) {
            r.fail("p=" + std::to_string(p) + " " + spec + " s=" + std::to_string(s) + " n=" + std::to_string(n) +
                   ": " + e.what());
            continue;
          }
          ++points;
          for (std::size_t i = 0; i < results.size(); ++i) {
            for (std::size_t j = i + 1; j < results.size(); ++j) {
              ++pairs;
              const int dv = difference_valuation(results[i].working_value, results[j].working_value);
              if (dv < B)
                r.fail("p=" + std::to_string(p) + " " + spec + " s=" + std::to_string(s) + " n=" +
                       std::to_string(n) + " " + route_tag(results[i].route) + "/" + route_tag(results[j].route) +
                       " v=" + std::to_string(dv) + " < " + std::to_string(B));
            }
          }
        }
      }
    }
  }
  r.detail = std::to_string(points) + " points, " + std::to_string(pairs) + " pairs, " + std::to_string(poles) +
             " pole points excluded";
  return r;
}

Report interpolation() {
  Report r;
  int checks = 0;
  int digits = 0;
  for (unsigned p : {3u, 5u, 7u}) {
    const PadicContext ctx(p, 24);
    for (const auto& spec : even_teichmuller_powers(p)) {
      const DirichletCharacter chi = parse_character(spec, ctx);
      for (unsigned n = 1; n <= 6; ++n) {
        const EvalPoint pt(chi, BigRational(1 - static_cast<int>(n)), ctx);
        const std::uint64_t F = times_power(pt.conductor(), p, 5);
        const LpResult got = lp_from_series(pt, 2, F, g_workers);
        const CycloPadic expected = interpolation_oracle(n, chi, ctx);
        const int target = std::min(got.guaranteed_precision, expected.precision());
        ++checks;
        digits += target;
        if (target < 1 || difference_valuation(got.value, expected) < target)
          r.fail("p=" + std::to_string(p) + " " + spec + " n=" + std::to_string(n));
      }
    }
  }
  const PadicContext c5(5, 20);
  const EvalPoint pinned(parse_character("teich:2", c5), BigRational(-1), c5);
  const LpResult v = lp_from_series(pinned, 2, 625, g_workers);
  const bool pinned_ok = v.guaranteed_precision >= 2 && v.value.coefficient(0).residue(2) == 17 &&
                         difference_valuation(v.value, CycloPadic::scalar(PadicNumber::from_rational(c5, {1, 3}),
                                                                          v.value.order())) >= 2;
  if (!pinned_ok) r.fail("L_5(-1, omega^2) is not 17 mod 25");
  r.detail = std::to_string(checks) + " values, " + std::to_string(digits) + " digits matched, L_5(-1,omega^2) = 17 mod 25";
  return r;
}

Report euler_peeling() {
  Report r;
  int checks = 0;
  const PadicContext ctx(5, 20);
  for (int s : {0, 1, -1}) {
    const EvalPoint pt(parse_character("teich:2", ctx), BigRational(s), ctx);
    for (unsigned l : {3u, 7u, 11u}) {
      for (unsigned n : {3u, 4u}) {
        const std::uint64_t F = times_power(l, 5, n);
        const int B = delta_bound(ctx, F);
        const CycloPadic peeled = euler_factored_series(pt, 2, F, {l}, g_workers);
        const CycloPadic full = lp_dirichlet_series(pt, 2, F, g_workers);
        ++checks;
        if (difference_valuation(peeled, euler_factor(pt, l) * full) < B)
          r.fail("s=" + std::to_string(s) + " l=" + std::to_string(l) + " F=" + std::to_string(F));
      }
    }
  }
  r.detail = std::to_string(checks) + " identities";
  return r;
}

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "padicl");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Report convergence() {
  Report r;
  int rows = 0;
  const std::vector<std::vector<std::string>> points{
      {"--p", "5", "--char", "teich:2", "--s", "1/2", "--c", "2"},
      {"--p", "3", "--char", "quad:5", "--s", "2", "--c", "2"},
      {"--p", "7", "--char", "teich:4", "--s", "-1", "--c", "3"},
      {"--p", "5", "--char", "teich:0", "--s", "5", "--c", "3"},
  };
  for (const auto& pt : points) {
    std::vector<std::string> args{"convergence", "--prec", "24", "--n-min", "2", "--n", "6", "--format", "csv",
                                  "--workers", std::to_string(g_workers)};
    args.insert(args.end(), pt.begin(), pt.end());
    const Run run = cli(args);
    std::string label;
    for (const auto& a : pt) label += a + " ";
    if (run.code != 0) {
      r.fail(label + "exit " + std::to_string(run.code) + " " + run.err);
      continue;
    }
    const cli::Table t = cli::parse_csv(run.out);
    int last = -1;
    for (std::size_t i = 1; i < t.rows.size(); ++i) {
      ++rows;
      const int diff = t.rows[i][3] == "inf" ? 1 << 30 : std::stoi(t.rows[i][3]);
      const int bound = std::stoi(t.rows[i][4]);
      if (diff < bound || diff < last) r.fail(label + "n=" + t.rows[i][0]);
      last = diff;
    }
  }
  r.detail = std::to_string(rows) + " consecutive-level differences over 4 points";
  return r;
}

Report determinism() {
  Report r;
  const std::vector<std::vector<std::string>> configs{
      {"compare", "--p", "5", "--char", "teich:2", "--s", "1/3", "--n", "4"},
      {"compare", "--p", "7", "--char", "quad:5", "--s", "-1", "--n", "3", "--format", "csv"},
      {"compare", "--p", "3", "--char", "teich:0", "--s", "2", "--F", "2673", "--euler-set", "11"},
      {"compare", "--p", "5", "--prec", "4", "--char", "teich:2", "--s", "0", "--n", "7"},
  };
  int runs = 0;
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  for (const auto& base : configs) {
    std::string reference;
    int reference_code = 0;
    for (unsigned w : {1u, 2u, 3u, 8u, hw, 1u}) {
      auto args = base;
      args.push_back("--workers");
      args.push_back(std::to_string(w));
      const Run run = cli(args);
      ++runs;
      if (reference.empty()) {
        reference = run.out;
        reference_code = run.code;
        if (reference.empty()) r.fail(base[1] + " produced no output");
      } else if (run.out != reference || run.code != reference_code) {
        r.fail("output differs at workers=" + std::to_string(w));
      }
    }
  }
  r.detail = std::to_string(runs) + " compare runs over 4 configurations";
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t only = 0;
  for (int i = 1; i + 1 < argc; ++i) {
    if (std::string(argv[i]) == "--workers") g_workers = static_cast<unsigned>(std::stoul(argv[i + 1]));
    if (std::string(argv[i]) == "--criterion") only = std::stoul(argv[i + 1]);
  }

  const std::vector<std::pair<std::string, std::function<Report()>>> criteria{
      {"theorem-3 equality of E_1c", theorem3_equality},
      {"distribution relations", distribution_relations},
      {"epsilon fixtures", epsilon_fixtures},
      {"cross-route agreement", cross_route_agreement},
      {"interpolation oracle", interpolation},
      {"Euler peeling", euler_peeling},
      {"convergence in n", convergence},
      {"determinism of compare", determinism},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (only != 0 && only != i + 1) continue;
    const auto start = std::chrono::steady_clock::now();
    Report rep;
    try {
      rep = criteria[i].second();
    } catch (const std::exception& e) {
      rep.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    all = all && rep.pass;
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << "criterion " << i + 1 << " " << (rep.pass ? "PASS" : "FAIL") << ": " << criteria[i].first << " ("
         << rep.detail << ", " << secs << " s)";
    std::cout << line.str() << '\n';
    for (const auto& f : rep.failures) std::cout << "  failed: " << f << '\n';
  }
  if (only == 0) std::cout << (all ? "all criteria PASS" : "some criteria FAIL") << '\n';
  return all ? 0 : 1;
}
