#pragma once

// Dense univariate polynomials over a prime field F_p.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "serrelab/zmod.hpp"

namespace serrelab {

class PolyModP {
 public:
  /// The zero polynomial over F_p.
  explicit PolyModP(std::uint64_t p);
  /// Coefficients are given lowest degree first and reduced into [0, p).
  PolyModP(std::uint64_t p, std::vector<std::uint64_t> coeffs);
  PolyModP(std::uint64_t p, std::initializer_list<std::int64_t> coeffs);

  static PolyModP constant(std::uint64_t p, std::uint64_t c);
  static PolyModP monomial(std::uint64_t p, std::size_t degree, std::uint64_t c = 1);

  std::uint64_t modulus() const noexcept { return p_; }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }
  std::uint64_t coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : 0; }
  std::uint64_t leading() const noexcept { return c_.empty() ? 0 : c_.back(); }
  std::span<const std::uint64_t> coeffs() const noexcept { return c_; }

  std::uint64_t eval(std::uint64_t x) const;
  PolyModP monic() const;
  PolyModP derivative() const;
  PolyModP scaled(std::uint64_t k) const;

  PolyModP& operator+=(const PolyModP& o);
  PolyModP& operator-=(const PolyModP& o);
  friend PolyModP operator+(PolyModP a, const PolyModP& b) { return a += b; }
  friend PolyModP operator-(PolyModP a, const PolyModP& b) { return a -= b; }
  friend PolyModP operator*(const PolyModP& a, const PolyModP& b);
  friend PolyModP operator%(const PolyModP& a, const PolyModP& m);

  bool operator==(const PolyModP& o) const { return p_ == o.p_ && c_ == o.c_; }

  std::string to_string() const;

 private:
  void trim();

  std::uint64_t p_;
  std::vector<std::uint64_t> c_;
};

/// Quotient and remainder; throws InvalidArgument on division by zero.
std::pair<PolyModP, PolyModP> divmod(const PolyModP& a, const PolyModP& b);
/// Monic gcd (zero if both inputs are zero).
PolyModP gcd(PolyModP a, PolyModP b);
/// a * b reduced modulo m.
PolyModP mulmod(const PolyModP& a, const PolyModP& b, const PolyModP& m);
/// Inverse of a modulo m, if gcd(a, m) = 1.
std::optional<PolyModP> invmod(const PolyModP& a, const PolyModP& m);
/// base^e mod modulus by square-and-multiply. Requires deg(modulus) >= 1;
/// throws MismatchedCharacteristic when the fields differ.
PolyModP poly_powmod(const PolyModP& base, const BigInt& e, const PolyModP& modulus);

/// Roots of f lying in F_p, ascending (by exhaustive evaluation).
std::vector<std::uint64_t> roots_in_prime_field(const PolyModP& f);

}  // namespace serrelab
