#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "orbitbound/linalg.hpp"

namespace orbitbound {

/// Dense univariate polynomial over F_p, coefficients from the constant term
/// upwards. The zero polynomial has no coefficients; otherwise the top
/// coefficient is nonzero.
class FpPoly {
 public:
  FpPoly() = default;
  FpPoly(std::uint32_t prime, std::vector<std::uint32_t> coefficients);

  static FpPoly monomial(std::uint32_t prime, std::size_t degree, std::uint32_t coefficient = 1);
  static FpPoly constant(std::uint32_t prime, std::uint32_t c) { return FpPoly(prime, {c}); }

  std::uint32_t prime() const { return p_; }
  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<std::uint32_t>& coefficients() const { return c_; }
  std::uint32_t leading() const { return c_.empty() ? 0 : c_.back(); }

  FpPoly monic() const;

  friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator-(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
  friend bool operator==(const FpPoly& a, const FpPoly& b) = default;

  /// Quotient and remainder; divisor must be nonzero.
  static void divmod(const FpPoly& a, const FpPoly& b, FpPoly& quotient, FpPoly& remainder);
  friend FpPoly operator%(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator/(const FpPoly& a, const FpPoly& b);

 private:
  void normalize();

  std::uint32_t p_ = 2;
  std::vector<std::uint32_t> c_;
};

/// Monic gcd (zero if both inputs are zero).
FpPoly gcd(FpPoly a, FpPoly b);
FpPoly powmod(const FpPoly& base, std::uint64_t exponent, const FpPoly& modulus);

/// Characteristic polynomial det(xI - m) via Hessenberg reduction.
FpPoly characteristic_polynomial(const PrimeFieldMatrix& m);

/// The distinct monic irreducible factors of f, sorted by degree then by
/// coefficients. Distinct-degree followed by Cantor-Zassenhaus splitting.
std::vector<FpPoly> distinct_irreducible_factors(const FpPoly& f, std::mt19937_64& rng);

/// f(m) for square m.
PrimeFieldMatrix evaluate(const FpPoly& f, const PrimeFieldMatrix& m);

}  // namespace orbitbound
