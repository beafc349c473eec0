#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "padicl/cyclo.hpp"

namespace padicl {

/// generator ↦ ζ_m^exponent
struct GeneratorImage {
  std::uint64_t generator;
  std::uint64_t exponent;
};

/// A Dirichlet character χ = ψ·ω^k.
///
/// ψ is stored abstractly: a table of exponents e(a) with ψ(a) = ζ_m^e(a)
/// for residues a modulo its modulus. ω is the Teichmüller character of a
/// fixed prime p, whose values are genuine elements of Z_p; the factor ω^k
/// is only present once a prime has been attached (by teichmuller() or
/// twist()). Attaching p folds a quadratic p-part of ψ into ω^((p-1)/2) so
/// that ψ's conductor is prime to p afterwards.
class DirichletCharacter {
 public:
  static DirichletCharacter trivial();
  /// The character of (Z/modulus)^× sending each listed generator to
  /// ζ_m^exponent. The generators must generate the unit group and the
  /// images must define a homomorphism; otherwise ConfigError.
  static DirichletCharacter from_generators(std::uint64_t modulus, const std::vector<GeneratorImage>& images,
                                            unsigned m);
  /// Legendre symbol (·/f) for an odd prime f.
  static DirichletCharacter quadratic(std::uint64_t f);
  static DirichletCharacter teichmuller(const PadicContext& ctx);

  std::uint64_t modulus() const;
  std::uint64_t conductor() const;
  /// Order m of the root of unity the abstract part takes values in.
  unsigned root_order() const { return m_; }
  /// Order of χ in the character group.
  unsigned order() const;
  bool is_even() const;
  bool is_trivial() const { return m_ == 1 && teich_power_ == 0; }

  /// Attached prime, or 0.
  unsigned prime() const { return p_; }
  unsigned teichmuller_power() const { return teich_power_; }

  std::uint64_t abstract_modulus() const { return abstract_modulus_; }
  /// e(a) for 0 <= a < abstract_modulus(); -1 where gcd(a, modulus) > 1.
  const std::vector<int>& exponent_table() const { return table_; }
  const std::vector<GeneratorImage>& generators() const { return generators_; }

  /// The character reduced to its conductor.
  DirichletCharacter primitive() const;
  /// χ ω^k, reduced to its conductor.
  DirichletCharacter twist(std::int64_t k, const PadicContext& ctx) const;
  /// The same character with the prime of ctx attached (and its p-part
  /// folded into the Teichmüller power).
  DirichletCharacter attached(const PadicContext& ctx) const;

  /// Exponent e with ψ(a) = ζ_m^e, or nullopt when χ(a) = 0.
  std::optional<unsigned> abstract_exponent(std::int64_t a) const;

  /// χ(a) in Z_p[ζ_m]; zero when a is not coprime to the modulus.
  CycloPadic evaluate(std::int64_t a, const PadicContext& ctx) const;

  std::string describe() const;

 private:
  DirichletCharacter() = default;
  void reduce_order();
  std::uint64_t abstract_conductor() const;
  DirichletCharacter restricted_to(std::uint64_t d) const;

  std::uint64_t abstract_modulus_ = 1;
  unsigned m_ = 1;
  std::vector<int> table_{0};
  std::vector<GeneratorImage> generators_;
  unsigned p_ = 0;
  unsigned teich_power_ = 0;
};

/// Residues that generate (Z/modulus)^×: one per cyclic factor, lifted by
/// CRT (two for the 2-part 2^k with k >= 3: -1 and 5).
std::vector<std::uint64_t> unit_group_generators(std::uint64_t modulus);

/// Character specification strings: `teich:k`, `quad:f`,
/// `gens:f:g1^e1,g2^e2,...:m`.
DirichletCharacter parse_character(const std::string& spec, const PadicContext& ctx);

}  // namespace padicl
