#pragma once

#include <stdexcept>
#include <string>

namespace padicl {

/// Invalid input: malformed configuration, violated precondition on
/// integer parameters (gcd conditions, parity, admissibility of s).
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Mathematically undefined request: the pole of the trivial character at
/// s = 1, a non-invertible regularization factor, division by zero.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// The working precision is too small to produce any known digit.
class PrecisionError : public std::runtime_error {
 public:
  explicit PrecisionError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace padicl
