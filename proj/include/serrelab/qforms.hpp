#pragma once

// Positive definite binary quadratic forms, class numbers of imaginary
// quadratic orders, and the matrix <-> form correspondence.

#include <cstdint>
#include <string>
#include <vector>

#include "serrelab/frobenius.hpp"
#include "serrelab/zmod.hpp"

namespace serrelab {

/// alpha x^2 + beta x y + gamma y^2.
struct QuadForm {
  std::int64_t alpha = 0, beta = 0, gamma = 0;

  /// beta^2 - 4 alpha gamma; throws Overflow instead of wrapping.
  std::int64_t discriminant() const;
  bool is_primitive() const;
  bool is_reduced() const;
  /// The form f(p x + q y, r x + s y) for an integral change of variables.
  QuadForm transformed(std::int64_t p, std::int64_t q, std::int64_t r, std::int64_t s) const;
  std::string to_string() const;
  bool operator==(const QuadForm&) const = default;
};

/// Discriminant of an imaginary quadratic order: negative, 0 or 1 mod 4.
class OrderDisc {
 public:
  /// Throws InvalidArgument on a value that is not such a discriminant.
  explicit OrderDisc(std::int64_t delta);
  std::int64_t value() const noexcept { return delta_; }
  /// f with delta = f^2 d_K, d_K fundamental.
  std::int64_t conductor() const;
  std::int64_t fundamental() const;
  bool operator==(const OrderDisc&) const = default;

 private:
  std::int64_t delta_;
};

/// The reduced form (-alpha < beta <= alpha <= gamma, beta >= 0 when
/// alpha = gamma) equivalent to f. Throws IndefiniteForm unless f is
/// positive definite.
QuadForm reduce(QuadForm f);

/// Number of reduced primitive forms of discriminant delta.
std::uint64_t class_number(const OrderDisc& delta);
/// |O^*|: 6 for -3, 4 for -4, else 2.
int unit_count(const OrderDisc& delta);

/// (a, b; c, d) -> c x^2 + (d - a) x y - b y^2. Requires trace^2 - 4 det < 0.
QuadForm matrix_to_form(const IntMatrix2& m);
/// Inverse map for a target trace t. Throws ParityMismatch when t - beta is odd.
IntMatrix2 form_to_matrix(const QuadForm& f, std::int64_t t);

/// (2 / w(Delta')) h(Delta') with Delta' = (T^2 - 4D) / f^2. Throws
/// InvalidConductor unless f >= 1, f^2 divides T^2 - 4D < 0 and the quotient
/// is 0 or 1 mod 4.
Rational weighted_orbit_count(std::int64_t t, std::int64_t d, std::int64_t f);

/// Class numbers for every order discriminant down to -max_abs, computed in
/// one sweep over reduced forms.
class ClassNumberTable {
 public:
  explicit ClassNumberTable(std::uint64_t max_abs);
  std::uint64_t max_abs() const noexcept { return h_.size() - 1; }
  /// Falls back to class_number beyond the table.
  std::uint64_t h(std::int64_t delta) const;
  /// (2 / w) h for discriminant delta.
  Rational weight(std::int64_t delta) const;

 private:
  std::vector<std::uint32_t> h_;
};

}  // namespace serrelab
