#include "padicl/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "padicl/lfun.hpp"
#include "padicl/measures.hpp"

namespace padicl::cli {

namespace {

struct RunConfig {
  unsigned p = 5;
  int prec = 20;
  std::string character = "teich:0";
  std::string s = "0";
  std::optional<unsigned> c;
  std::optional<unsigned> n;
  std::optional<std::uint64_t> F;
  std::string method = "series";
  std::string euler_set;
  std::string format = "text";
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::optional<unsigned> jmax;
  unsigned n_min = 2;
  std::uint64_t d = 1;
  unsigned levels = 3;
};

BigRational parse_rational(const std::string& flag, const std::string& text) {
  auto fail = [&](std::size_t col, const std::string& why) {
    return ConfigError(flag + " '" + text + "' column " + std::to_string(col + 1) + ": " + why);
  };
  if (text.empty()) throw fail(0, "empty value");
  std::size_t i = 0;
  if (text[0] == '-' || text[0] == '+') i = 1;
  bool seen_slash = false;
  std::size_t digits_since = 0;
  for (; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch >= '0' && ch <= '9') {
      ++digits_since;
    } else if (ch == '/' && !seen_slash && digits_since > 0) {
      seen_slash = true;
      digits_since = 0;
    } else {
      throw fail(i, std::string("unexpected character '") + ch + "'");
    }
  }
  if (digits_since == 0) throw fail(text.size() - 1, "missing digits");
  std::string body = text[0] == '+' ? text.substr(1) : text;
  BigRational r;
  if (r.set_str(body, 10) != 0) throw fail(0, "not a rational number");
  if (r.get_den() == 0) throw fail(text.find('/') + 1, "zero denominator");
  r.canonicalize();
  return r;
}

std::vector<unsigned> parse_prime_list(const std::string& text) {
  std::vector<unsigned> out;
  if (text.empty()) return out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    const bool digits = !item.empty() && std::all_of(item.begin(), item.end(), [](char ch) {
      return ch >= '0' && ch <= '9';
    });
    if (!digits || item.size() > 9)
      throw ConfigError("--euler-set '" + text + "' column " + std::to_string(pos + 1) + ": expected a prime, got '" +
                        item + "'");
    out.push_back(static_cast<unsigned>(std::stoul(item)));
    pos = comma + 1;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::uint64_t power_of(std::uint64_t base, unsigned p, unsigned n) {
  for (unsigned i = 0; i < n; ++i) {
    if (base > (std::uint64_t{1} << 40)) throw ConfigError("d p^n is too large");
    base *= p;
  }
  return base;
}

struct Problem {
  PadicContext ctx;
  EvalPoint pt;
  std::uint64_t F;
  std::optional<unsigned> level;  // n with F = d p^n, when F has that shape
  unsigned c;
  std::vector<unsigned> euler;
};

Problem make_problem(const RunConfig& cfg) {
  const PadicContext ctx(cfg.p, cfg.prec);
  const EvalPoint pt(parse_character(cfg.character, ctx), parse_rational("--s", cfg.s), ctx);
  if (cfg.n && cfg.F) throw ConfigError("give either --n or --F, not both");
  if (!cfg.n && !cfg.F) throw ConfigError("one of --n or --F is required");
  const std::uint64_t d = pt.tame_conductor();
  std::uint64_t F = 0;
  std::optional<unsigned> level;
  if (cfg.n) {
    F = power_of(d, cfg.p, *cfg.n);
    level = cfg.n;
  } else {
    F = *cfg.F;
    std::uint64_t rest = F;
    unsigned k = 0;
    while (rest % cfg.p == 0 && rest > 0) {
      rest /= cfg.p;
      ++k;
    }
    if (rest == d) level = k;
  }
  const std::vector<unsigned> euler = parse_prime_list(cfg.euler_set);
  unsigned c = 0;
  if (cfg.c) {
    c = *cfg.c;
  } else {
    std::uint64_t all = F;
    for (unsigned l : euler) all *= l;
    for (c = 2; std::gcd<std::uint64_t>(c, all) != 1; ++c) {
    }
  }
  return {ctx, pt, F, level, c, euler};
}

unsigned require_level(const Problem& pr) {
  if (!pr.level)
    throw ConfigError("the measure route needs F = d p^n with d = " + std::to_string(pr.pt.tame_conductor()) +
                      "; F = " + std::to_string(pr.F) + " is not of that shape");
  return *pr.level;
}

LpResult run_route(const std::string& method, const Problem& pr, const RunConfig& cfg) {
  if (method == "washington") return lp_washington(pr.pt, pr.F, cfg.jmax, cfg.workers);
  if (method == "kl") return lp_kl_approx(pr.pt, pr.F, cfg.workers);
  if (method == "series") return lp_from_series(pr.pt, pr.c, pr.F, cfg.workers);
  if (method == "measure") return lp_via_measure(pr.pt, pr.c, require_level(pr), cfg.workers);
  if (method == "euler") {
    if (pr.euler.empty()) throw ConfigError("--method euler needs --euler-set");
    return lp_euler(pr.pt, pr.c, pr.F, pr.euler, cfg.workers);
  }
  throw ConfigError("unknown --method '" + method + "' (washington, kl, series, measure, euler)");
}

std::string route_label(const LpResult& r) {
  std::string label = route_tag(r.route);
  if (r.route == Route::series || r.route == Route::measure || r.route == Route::euler)
    label += "(c=" + std::to_string(r.c) + ")";
  return label;
}

std::string valuation_text(int v) { return v == kInfinity ? "inf" : std::to_string(v); }

void emit(const Table& t, const std::string& format, std::ostream& out) {
  if (format == "csv") {
    out << render_csv(t);
    return;
  }
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? " " : "") << t.header[i] << '=' << row[i];
    out << '\n';
  }
}

void check_format(const RunConfig& cfg) {
  if (cfg.format != "text" && cfg.format != "csv")
    throw ConfigError("--format must be text or csv, got '" + cfg.format + "'");
}

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
  const Problem pr = make_problem(cfg);
  const LpResult r = run_route(cfg.method, pr, cfg);
  if (cfg.format == "text") {
    out << r.render() << '\n';
    return kSuccess;
  }
  Table t{{"route", "F", "c", "prec", "value"}, {}};
  t.rows.push_back({route_tag(r.route), std::to_string(pr.F), r.c ? std::to_string(r.c) : "",
                    std::to_string(r.guaranteed_precision), r.value.render()});
  out << render_csv(t);
  return kSuccess;
}

int cmd_compare(const RunConfig& cfg, std::ostream& out) {
  const Problem pr = make_problem(cfg);
  std::vector<LpResult> results;
  results.push_back(lp_washington(pr.pt, pr.F, cfg.jmax, cfg.workers));
  results.push_back(lp_kl_approx(pr.pt, pr.F, cfg.workers));
  results.push_back(lp_from_series(pr.pt, pr.c, pr.F, cfg.workers));
  if (pr.level) results.push_back(lp_via_measure(pr.pt, pr.c, *pr.level, cfg.workers));
  if (!pr.euler.empty()) results.push_back(lp_euler(pr.pt, pr.c, pr.F, pr.euler, cfg.workers));

  const int required = delta_bound(pr.ctx, pr.F);
  Table t{{"kind", "name", "prec", "diff", "required", "status", "value"}, {}};
  for (const auto& r : results)
    t.rows.push_back({"route", route_label(r), std::to_string(r.guaranteed_precision), "", "", "",
                      r.value.render()});
  bool all_pass = true;
  for (std::size_t i = 0; i < results.size(); ++i) {
    for (std::size_t j = i + 1; j < results.size(); ++j) {
      const int dv = difference_valuation(results[i].working_value, results[j].working_value);
      const bool pass = dv >= required;
      all_pass = all_pass && pass;
      std::string status = pass ? "PASS" : "FAIL";
      if (!pass) {
        const int carried = std::min(results[i].working_value.precision(), results[j].working_value.precision());
        status += carried < required ? " (working precision p^" + std::to_string(carried) +
                                           " cannot certify the required p^" + std::to_string(required) + ")"
                                     : " (difference valuation " + valuation_text(dv) + " below the bound)";
      }
      t.rows.push_back({"pair", route_label(results[i]) + "/" + route_label(results[j]), "", valuation_text(dv),
                        std::to_string(required), status, ""});
    }
  }
  if (cfg.format == "csv") {
    out << render_csv(t);
  } else {
    out << "point p=" << cfg.p << " N=" << cfg.prec << " chi=" << pr.pt.character().describe()
        << " s=" << pr.pt.s().get_str() << " F=" << pr.F << " c=" << pr.c << '\n';
    for (const auto& row : t.rows) {
      if (row[0] == "route")
        out << "route=" << row[1] << " prec=p^" << row[2] << " value=" << row[6] << '\n';
      else
        out << "pair=" << row[1] << " diff=p^" << row[3] << " required=p^" << row[4] << ' ' << row[5] << '\n';
    }
    out << "result " << (all_pass ? "PASS" : "FAIL") << '\n';
  }
  return all_pass ? kSuccess : kCompareFailed;
}

std::string rational_text(const BigRational& x) {
  return mpz_class(x.get_num()).get_str() + "/" + mpz_class(x.get_den()).get_str();
}

int cmd_eps_table(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.c) throw ConfigError("eps-table needs --c");
  if (!cfg.F) throw ConfigError("eps-table needs --F");
  Table t{{"a", "eps"}, {}};
  for (unsigned a = 0; a < *cfg.c; ++a)
    t.rows.push_back({std::to_string(a), rational_text(epsilon_coeff(a, *cfg.c, *cfg.F).value())});
  emit(t, cfg.format, out);
  return kSuccess;
}

int cmd_measure_check(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.c) throw ConfigError("measure-check needs --c");
  const unsigned c = *cfg.c;
  const unsigned p = cfg.p;
  const PadicContext ctx(p, std::max(cfg.prec, 4));
  const std::uint64_t d = cfg.d;
  MeasureBall(0, d, 0, p);  // validates d
  if (std::gcd<std::uint64_t>(c, d * p) != 1) throw ConfigError("c must be coprime to d p");
  Table t{{"property", "level", "balls", "status"}, {}};
  bool all_pass = true;
  auto record = [&](const std::string& name, unsigned level, std::uint64_t balls, bool ok) {
    all_pass = all_pass && ok;
    t.rows.push_back({name, std::to_string(level), std::to_string(balls), ok ? "PASS" : "FAIL"});
  };
  for (unsigned n = 0; n < cfg.levels; ++n) {
    const std::uint64_t M = power_of(d, p, n);
    bool e1 = true, e2 = true, e1c = true;
    for (std::uint64_t a = 0; a < M; ++a) {
      const MeasureBall ball(a, d, n, p);
      BigRational s1 = 0, s2 = 0, s1c = 0;
      for (std::uint64_t b = a; b < M * p; b += M) {
        const MeasureBall child(b, d, n + 1, p);
        s1 += ek_value(child, 1);
        s2 += ek_value(child, 2);
        s1c += e1c_value_by_definition(child, c);
      }
      e1 = e1 && s1 == ek_value(ball, 1);
      e2 = e2 && s2 == ek_value(ball, 2);
      e1c = e1c && s1c == e1c_value_by_definition(ball, c);
    }
    record("distribution-E1", n, M, e1);
    record("distribution-E2", n, M, e2);
    record("distribution-E1c", n, M, e1c);
  }
  for (unsigned n = 0; n <= cfg.levels; ++n) {
    const std::uint64_t M = power_of(d, p, n);
    bool eq = true;
    for (std::uint64_t a = 0; a < M; ++a) {
      const MeasureBall ball(a, d, n, p);
      eq = eq && e1c_value_by_definition(ball, c) == e1c_value_closed_form(ball, c).value();
    }
    record("closed-form-E1c", n, M, eq);
  }
  emit(t, cfg.format, out);
  return all_pass ? kSuccess : kCompareFailed;
}

int cmd_convergence(const RunConfig& cfg, std::ostream& out) {
  const unsigned n_max = cfg.n.value_or(6);
  if (cfg.F) throw ConfigError("convergence runs over levels; use --n for the last level, not --F");
  if (cfg.n_min > n_max) throw ConfigError("--n-min exceeds --n");
  Table t{{"n", "F", "prec", "diff", "bound", "status", "value"}, {}};
  std::optional<LpResult> previous;
  bool all_pass = true;
  int last_diff = -kInfinity / 2;
  for (unsigned n = cfg.n_min; n <= n_max; ++n) {
    RunConfig level_cfg = cfg;
    level_cfg.n = n;
    const Problem pr = make_problem(level_cfg);
    const LpResult r = lp_from_series(pr.pt, pr.c, pr.F, cfg.workers);
    const int level_bound = delta_bound(pr.ctx, pr.F);
    std::string diff, bound, status;
    if (previous) {
      const int dv = difference_valuation(previous->working_value, r.working_value);
      const bool ok = dv >= level_bound && dv >= last_diff;
      all_pass = all_pass && ok;
      last_diff = dv;
      diff = valuation_text(dv);
      bound = std::to_string(level_bound);
      status = ok ? "PASS" : "FAIL";
    }
    t.rows.push_back({std::to_string(n), std::to_string(pr.F), std::to_string(r.guaranteed_precision), diff, bound,
                      status, r.value.render()});
    previous = r;
  }
  emit(t, cfg.format, out);
  return all_pass ? kSuccess : kCompareFailed;
}

int cmd_oracle(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.n || *cfg.n == 0) throw ConfigError("oracle needs --n >= 1");
  const PadicContext ctx(cfg.p, cfg.prec);
  const DirichletCharacter chi = parse_character(cfg.character, ctx);
  const CycloPadic v = interpolation_oracle(*cfg.n, chi, ctx);
  Table t{{"n", "s", "value"}, {}};
  t.rows.push_back({std::to_string(*cfg.n), std::to_string(1 - static_cast<long>(*cfg.n)), v.render()});
  emit(t, cfg.format, out);
  return kSuccess;
}

}  // namespace

std::string render_csv(const Table& table) {
  std::string out;
  auto field = [&](const std::string& f) {
    if (f.find_first_of(",\"\n\r") == std::string::npos) {
      out += f;
      return;
    }
    out += '"';
    for (char ch : f) {
      if (ch == '"') out += '"';
      out += ch;
    }
    out += '"';
  };
  auto record = [&](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      field(row[i]);
    }
    out += '\n';
  };
  record(table.header);
  for (const auto& row : table.rows) record(row);
  return out;
}

Table parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> row;
  std::string cur;
  std::size_t line = 1, col = 1;
  auto fail = [&](const std::string& why) {
    return ConfigError("csv line " + std::to_string(line) + " column " + std::to_string(col) + ": " + why);
  };
  std::size_t i = 0;
  bool field_started = false;
  while (i < text.size()) {
    const char ch = text[i];
    if (ch == '"' && !field_started) {
      field_started = true;
      ++i;
      ++col;
      for (;;) {
        if (i >= text.size()) throw fail("unterminated quoted field");
        if (text[i] == '"') {
          if (i + 1 < text.size() && text[i + 1] == '"') {
            cur += '"';
            i += 2;
            col += 2;
            continue;
          }
          ++i;
          ++col;
          break;
        }
        if (text[i] == '\n') {
          ++line;
          col = 0;
        }
        cur += text[i++];
        ++col;
      }
      if (i < text.size() && text[i] != ',' && text[i] != '\n') throw fail("text after closing quote");
      continue;
    }
    if (ch == ',') {
      row.push_back(std::move(cur));
      cur.clear();
      field_started = false;
    } else if (ch == '\n') {
      row.push_back(std::move(cur));
      cur.clear();
      records.push_back(std::move(row));
      row.clear();
      field_started = false;
      ++line;
      col = 0;
    } else if (ch == '"') {
      throw fail("quote inside an unquoted field");
    } else {
      field_started = true;
      cur += ch;
    }
    ++i;
    ++col;
  }
  if (field_started || !row.empty()) throw fail("missing final line break");
  if (records.empty()) throw fail("no header record");
  Table t;
  t.header = std::move(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != t.header.size())
      throw ConfigError("csv line " + std::to_string(r + 1) + ": expected " + std::to_string(t.header.size()) +
                        " fields, found " + std::to_string(records[r].size()));
    t.rows.push_back(std::move(records[r]));
  }
  return t;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"p-adic L-functions by four routes, with certified cross-checks"};
  app.name(args.empty() ? "padicl" : args.front());
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--p", cfg.p, "prime p")->capture_default_str();
    sub->add_option("--prec", cfg.prec, "working precision N in p-adic digits")->capture_default_str();
    sub->add_option("--format", cfg.format, "text or csv")->capture_default_str();
    sub->add_option("--workers", cfg.workers, "threads used by the residue sums");
  };
  auto point = [&](CLI::App* sub) {
    sub->add_option("--char", cfg.character,
                    "character: teich:k | quad:f | gens:f:g1^e1,g2^e2,...:m")
        ->capture_default_str();
    sub->add_option("--s", cfg.s, "evaluation point, an integer or a/b")->capture_default_str();
    sub->add_option("--c", cfg.c, "regularization parameter (default: least c >= 2 coprime to F)");
    sub->add_option("--euler-set", cfg.euler_set, "primes l1,l2,... to peel off");
    sub->add_option("--jmax", cfg.jmax, "override the Bernoulli-series truncation");
  };

  auto* eval = app.add_subcommand("eval", "evaluate L_p(s, chi) by one route");
  common(eval);
  point(eval);
  eval->add_option("--n", cfg.n, "level: F = d p^n with d the prime-to-p conductor");
  eval->add_option("--F", cfg.F, "explicit modulus F");
  eval->add_option("--method", cfg.method, "washington | kl | series | measure | euler")->capture_default_str();

  auto* compare = app.add_subcommand("compare", "run every route and check pairwise agreement");
  common(compare);
  point(compare);
  compare->add_option("--n", cfg.n, "level: F = d p^n");
  compare->add_option("--F", cfg.F, "explicit modulus F");

  auto* eps = app.add_subcommand("eps-table", "tabulate eps_{a,c,F} for a in [0, c)");
  common(eps);
  eps->add_option("--c", cfg.c, "regularization parameter")->required();
  eps->add_option("--F", cfg.F, "modulus F")->required();

  auto* mcheck = app.add_subcommand("measure-check", "distribution relations and the closed form of E_{1,c}");
  common(mcheck);
  mcheck->add_option("--c", cfg.c, "regularization parameter")->required();
  mcheck->add_option("--d", cfg.d, "tame level d")->capture_default_str();
  mcheck->add_option("--levels", cfg.levels, "number of refinement levels")->capture_default_str();

  auto* conv = app.add_subcommand("convergence", "series values over consecutive levels n");
  common(conv);
  point(conv);
  conv->add_option("--n", cfg.n, "last level (default 6)");
  conv->add_option("--n-min", cfg.n_min, "first level")->capture_default_str();
  conv->add_option("--F", cfg.F, "not accepted; levels set F");

  auto* oracle = app.add_subcommand("oracle", "interpolation value L_p(1-n, chi) from B_{n, chi omega^-n}");
  common(oracle);
  oracle->add_option("--char", cfg.character, "character")->capture_default_str();
  oracle->add_option("--n", cfg.n, "n >= 1")->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  }

  try {
    check_format(cfg);
    if (cfg.workers == 0) throw ConfigError("--workers must be positive");
    if (*eval) return cmd_eval(cfg, out);
    if (*compare) return cmd_compare(cfg, out);
    if (*eps) return cmd_eps_table(cfg, out);
    if (*mcheck) return cmd_measure_check(cfg, out);
    if (*conv) return cmd_convergence(cfg, out);
    if (*oracle) return cmd_oracle(cfg, out);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    err << "math-domain error: " << e.what() << '\n';
    return kDomainError;
  } catch (const PrecisionError& e) {
    err << "math-domain error: " << e.what() << '\n';
    return kDomainError;
  }
  return kConfigError;
}

}  // namespace padicl::cli
