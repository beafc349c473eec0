#include "padicl/characters.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

namespace padicl {

namespace {

using u64 = std::uint64_t;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  for (; e; e >>= 1) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
  }
  return r;
}

u64 reduce(std::int64_t a, u64 m) {
  const auto mm = static_cast<std::int64_t>(m);
  return static_cast<u64>(((a % mm) + mm) % mm);
}

// (prime, exponent) pairs
std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

u64 totient(u64 n) {
  u64 phi = n;
  for (auto [l, e] : factorize(n)) phi = phi / l * (l - 1);
  return phi;
}

// x ≡ r1 mod m1, x ≡ r2 mod m2 for coprime m1, m2
u64 crt(u64 r1, u64 m1, u64 r2, u64 m2) {
  if (m1 == 1) return r2 % m2;
  if (m2 == 1) return r1 % m1;
  mpz_class inv;
  const mpz_class a = static_cast<unsigned long>(m1 % m2), b = static_cast<unsigned long>(m2);
  mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  const u64 k = mulmod((r2 + m2 - r1 % m2) % m2, inv.get_ui(), m2);
  return r1 + k * m1;
}

bool is_primitive_root(u64 g, u64 pk, u64 phi) {
  for (auto [l, e] : factorize(phi))
    if (powmod(g, phi / l, pk) == 1) return false;
  return true;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace

std::vector<u64> unit_group_generators(u64 modulus) {
  std::vector<u64> gens;
  if (modulus <= 2) return gens;
  for (auto [l, e] : factorize(modulus)) {
    u64 pk = 1;
    for (unsigned i = 0; i < e; ++i) pk *= l;
    const u64 rest = modulus / pk;
    std::vector<u64> local;
    if (l == 2) {
      if (e == 2) local.push_back(3);
      if (e >= 3) {
        local.push_back(pk - 1);
        local.push_back(5);
      }
    } else {
      const u64 phi = pk / l * (l - 1);
      u64 g = 2;
      while (!is_primitive_root(g, pk, phi)) ++g;
      local.push_back(g);
    }
    for (u64 g : local) gens.push_back(crt(g, pk, 1, rest));
  }
  return gens;
}

DirichletCharacter DirichletCharacter::trivial() { return DirichletCharacter(); }

DirichletCharacter DirichletCharacter::from_generators(u64 modulus, const std::vector<GeneratorImage>& images,
                                                       unsigned m) {
  if (modulus == 0) throw ConfigError("character modulus must be positive");
  if (m == 0) throw ConfigError("root-of-unity order must be positive");
  DirichletCharacter chi;
  chi.abstract_modulus_ = modulus;
  chi.m_ = m;
  chi.generators_ = images;
  chi.table_.assign(modulus, -1);
  for (const auto& g : images)
    if (std::gcd(g.generator % modulus, modulus) != 1)
      throw ConfigError("generator " + std::to_string(g.generator) + " is not a unit mod " +
                        std::to_string(modulus));
  // Breadth-first walk of the Cayley graph; every edge is checked, so a
  // consistent labelling is a homomorphism.
  const u64 one = 1 % modulus;
  chi.table_[one] = 0;
  std::deque<u64> queue{one};
  u64 reached = 1;
  while (!queue.empty()) {
    const u64 x = queue.front();
    queue.pop_front();
    for (const auto& g : images) {
      const u64 y = mulmod(x, g.generator % modulus, modulus);
      const int ey = static_cast<int>((static_cast<u64>(chi.table_[x]) + g.exponent) % m);
      if (chi.table_[y] < 0) {
        chi.table_[y] = ey;
        queue.push_back(y);
        ++reached;
      } else if (chi.table_[y] != ey) {
        throw ConfigError("generator images are inconsistent: they do not define a homomorphism mod " +
                          std::to_string(modulus));
      }
    }
  }
  if (reached != totient(modulus))
    throw ConfigError("listed generators do not generate (Z/" + std::to_string(modulus) + ")^×");
  chi.reduce_order();
  return chi;
}

DirichletCharacter DirichletCharacter::quadratic(u64 f) {
  if (f < 3 || !is_prime(f)) throw ConfigError("quad:f needs an odd prime f, got " + std::to_string(f));
  const u64 g = unit_group_generators(f).front();
  return from_generators(f, {{g, 1}}, 2);
}

DirichletCharacter DirichletCharacter::teichmuller(const PadicContext& ctx) {
  DirichletCharacter chi;
  chi.p_ = ctx.prime();
  chi.teich_power_ = 1;
  return chi;
}

void DirichletCharacter::reduce_order() {
  const unsigned old_m = m_;
  u64 g = m_;
  for (int e : table_)
    if (e > 0) g = std::gcd(g, static_cast<u64>(e));
  for (int& e : table_)
    if (e >= 0) e = static_cast<int>(static_cast<u64>(e) / g);
  m_ = static_cast<unsigned>(m_ / g);
  for (auto& img : generators_) img.exponent = (img.exponent % old_m) / g;
}

u64 DirichletCharacter::abstract_conductor() const {
  const u64 M = abstract_modulus_;
  for (u64 d = 1; d < M; ++d) {
    if (M % d) continue;
    bool trivial_on_kernel = true;
    for (u64 a = 1 % M; a < M && trivial_on_kernel; a += d) {
      if (a % d != 1 % d) continue;
      if (table_[a] > 0) trivial_on_kernel = false;
    }
    if (trivial_on_kernel) return d;
  }
  return M;
}

DirichletCharacter DirichletCharacter::restricted_to(u64 d) const {
  DirichletCharacter out = *this;
  out.abstract_modulus_ = d;
  out.table_.assign(d, -1);
  for (u64 b = 0; b < d; ++b) {
    if (std::gcd(b, d) != 1) continue;
    for (u64 a = b; a < abstract_modulus_ + d; a += d) {
      const u64 r = a % abstract_modulus_;
      if (table_[r] >= 0) {
        out.table_[b] = table_[r];
        break;
      }
    }
  }
  out.generators_.clear();
  for (u64 g : unit_group_generators(d)) out.generators_.push_back({g, static_cast<u64>(out.table_[g])});
  return out;
}

u64 DirichletCharacter::modulus() const {
  if (teich_power_ == 0) return abstract_modulus_;
  return std::lcm(abstract_modulus_, static_cast<u64>(p_ == 2 ? 4 : p_));
}

u64 DirichletCharacter::conductor() const {
  const u64 c = abstract_conductor();
  return teich_power_ == 0 ? c : c * (p_ == 2 ? 4 : p_);
}

unsigned DirichletCharacter::order() const {
  if (teich_power_ == 0) return m_;
  const unsigned ord = p_ == 2 ? 2 : p_ - 1;
  return std::lcm(m_, ord / std::gcd(ord, teich_power_));
}

bool DirichletCharacter::is_even() const {
  const int e = table_[abstract_modulus_ - 1];
  bool even = e == 0;
  if (teich_power_ % 2 == 1) even = !even;
  return even;
}

DirichletCharacter DirichletCharacter::primitive() const {
  const u64 c = abstract_conductor();
  if (c == abstract_modulus_) return *this;
  return restricted_to(c);
}

DirichletCharacter DirichletCharacter::attached(const PadicContext& ctx) const {
  const unsigned p = ctx.prime();
  if (p_ != 0) {
    if (p_ != p)
      throw ConfigError("character carries the Teichmüller character of p = " + std::to_string(p_) +
                        ", evaluated with p = " + std::to_string(p));
    return *this;
  }
  DirichletCharacter out = *this;
  out.p_ = p;
  const u64 M = abstract_modulus_;
  u64 pe = 1;
  while (M % (pe * p) == 0) pe *= p;
  if (pe == 1) return out;
  const u64 rest = M / pe;

  // ψ = ψ_p ψ_rest; examine ψ_p on (Z/p^e)^×
  bool trivial_p = true;
  bool quadratic_p = m_ % 2 == 0;
  bool matches_omega = true;  // ψ_p(x) = -1 exactly for x a non-residue (p odd) / x ≡ 3 mod 4 (p = 2)
  for (u64 x = 1; x < pe; ++x) {
    if (x % p == 0) continue;
    const int e = table_[crt(x, pe, 1, rest)];
    if (e != 0) trivial_p = false;
    if (e != 0 && static_cast<unsigned>(e) != m_ / 2) quadratic_p = false;
    bool omega_negative;
    if (p == 2) {
      omega_negative = x % 4 == 3;
    } else {
      omega_negative = powmod(x % p, (p - 1) / 2, p) == p - 1;
    }
    if ((e != 0) != omega_negative) matches_omega = false;
  }
  if (!trivial_p) {
    if (!(quadratic_p && matches_omega))
      throw ConfigError("the p-part of this character is not a power of the Teichmüller character of order <= 2;"
                        " write it as teich:k instead");
    out.teich_power_ = p == 2 ? 1 : (p - 1) / 2;
  }
  out.abstract_modulus_ = rest;
  out.table_.assign(rest, -1);
  for (u64 z = 0; z < rest; ++z) {
    if (std::gcd(z, rest) != 1) continue;
    out.table_[z] = table_[crt(1, pe, z, rest)];
  }
  out.generators_.clear();
  for (u64 g : unit_group_generators(rest)) out.generators_.push_back({g, static_cast<u64>(out.table_[g])});
  out.reduce_order();
  return out;
}

DirichletCharacter DirichletCharacter::twist(std::int64_t k, const PadicContext& ctx) const {
  DirichletCharacter out = attached(ctx);
  const auto ord = static_cast<std::int64_t>(ctx.teichmuller_order());
  out.teich_power_ = static_cast<unsigned>((((static_cast<std::int64_t>(out.teich_power_) + k) % ord) + ord) % ord);
  return out.primitive();
}

std::optional<unsigned> DirichletCharacter::abstract_exponent(std::int64_t a) const {
  if (teich_power_ != 0 && a % static_cast<std::int64_t>(p_) == 0) return std::nullopt;
  const int e = table_[reduce(a, abstract_modulus_)];
  if (e < 0) return std::nullopt;
  return static_cast<unsigned>(e);
}

CycloPadic DirichletCharacter::evaluate(std::int64_t a, const PadicContext& ctx) const {
  if (p_ != 0 && p_ != ctx.prime())
    throw ConfigError("character attached to p = " + std::to_string(p_) + " evaluated with p = " +
                      std::to_string(ctx.prime()));
  const auto e = abstract_exponent(a);
  if (!e) return CycloPadic(ctx, m_);
  CycloPadic value = CycloPadic::root_of_unity(ctx, m_, *e);
  if (teich_power_ != 0) value *= power_st(padicl::teichmuller(a, ctx), static_cast<std::int64_t>(teich_power_));
  return value;
}

std::string DirichletCharacter::describe() const {
  std::ostringstream os;
  os << "psi mod " << abstract_modulus_ << " into mu_" << m_;
  if (!generators_.empty()) {
    os << " {";
    for (std::size_t i = 0; i < generators_.size(); ++i)
      os << (i ? "," : "") << generators_[i].generator << "^" << generators_[i].exponent;
    os << "}";
  }
  if (p_ != 0) os << " * omega_" << p_ << "^" << teich_power_;
  return os.str();
}

DirichletCharacter parse_character(const std::string& spec, const PadicContext& ctx) {
  auto fail = [&](const std::string& why, std::size_t col) -> ConfigError {
    return ConfigError("character spec '" + spec + "' column " + std::to_string(col + 1) + ": " + why);
  };
  auto parse_int = [&](const std::string& s, std::size_t col) -> std::int64_t {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      throw fail("expected an integer, got '" + s + "'", col);
    }
    if (used != s.size()) throw fail("expected an integer, got '" + s + "'", col);
    return v;
  };
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw fail("expected teich:k, quad:f or gens:f:g^e,...:m", 0);
  const std::string kind = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  if (kind == "teich") {
    const std::int64_t k = parse_int(rest, colon + 1);
    return DirichletCharacter::trivial().twist(k, ctx);
  }
  if (kind == "quad") {
    const std::int64_t f = parse_int(rest, colon + 1);
    if (f <= 0) throw fail("conductor must be positive", colon + 1);
    return DirichletCharacter::quadratic(static_cast<u64>(f)).attached(ctx).primitive();
  }
  if (kind == "gens") {
    const auto c2 = rest.find(':');
    const auto c3 = c2 == std::string::npos ? std::string::npos : rest.rfind(':');
    if (c2 == std::string::npos || c3 == c2) throw fail("expected gens:f:g1^e1,...:m", colon + 1);
    const std::size_t base = colon + 1;
    const std::int64_t f = parse_int(rest.substr(0, c2), base);
    const std::int64_t m = parse_int(rest.substr(c3 + 1), base + c3 + 1);
    if (f <= 0 || m <= 0) throw fail("modulus and order must be positive", base);
    std::vector<GeneratorImage> images;
    const std::string list = rest.substr(c2 + 1, c3 - c2 - 1);
    std::size_t pos = 0;
    while (pos <= list.size() && !list.empty()) {
      const auto comma = std::min(list.find(',', pos), list.size());
      const std::string item = list.substr(pos, comma - pos);
      const auto caret = item.find('^');
      const std::size_t col = base + c2 + 1 + pos;
      if (caret == std::string::npos) throw fail("expected g^e, got '" + item + "'", col);
      const std::int64_t g = parse_int(item.substr(0, caret), col);
      const std::int64_t e = parse_int(item.substr(caret + 1), col + caret + 1);
      if (g <= 0 || e < 0) throw fail("generator must be positive and exponent nonnegative", col);
      images.push_back({static_cast<u64>(g), static_cast<u64>(e)});
      pos = comma + 1;
    }
    return DirichletCharacter::from_generators(static_cast<u64>(f), images, static_cast<unsigned>(m))
        .attached(ctx)
        .primitive();
  }
  throw fail("unknown character kind '" + kind + "'", 0);
}

}  // namespace padicl
