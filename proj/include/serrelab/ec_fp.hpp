#pragma once

// Short Weierstrass curves y^2 = x^3 + r x + s over prime fields F_p, p >= 5.

#include <cstdint>
#include <vector>

#include "serrelab/poly.hpp"
#include "serrelab/zmod.hpp"

namespace serrelab {

class CurveFp {
 public:
  /// Throws BadCharacteristic unless p is a prime >= 5 (and word sized),
  /// SingularCurve when 4r^3 + 27s^2 = 0 in F_p.
  CurveFp(std::uint64_t p, std::int64_t r, std::int64_t s);
  CurveFp(std::uint64_t p, const BigInt& r, const BigInt& s);

  std::uint64_t p() const noexcept { return p_; }
  std::uint64_t r() const noexcept { return r_; }
  std::uint64_t s() const noexcept { return s_; }

  /// x^3 + r x + s evaluated at x.
  std::uint64_t rhs(std::uint64_t x) const;
  /// x^3 + r x + s as a polynomial over F_p.
  PolyModP cubic() const;

 private:
  void validate() const;

  std::uint64_t p_;
  std::uint64_t r_;
  std::uint64_t s_;
};

/// True when 4r^3 + 27s^2 vanishes mod p.
bool is_singular_mod(std::uint64_t p, std::uint64_t r, std::uint64_t s);

/// Quadratic character table for F_p: chi[x] in {-1, 0, 1}.
class LegendreTable {
 public:
  explicit LegendreTable(std::uint64_t p);
  std::uint64_t p() const noexcept { return p_; }
  int operator()(std::uint64_t x) const noexcept { return chi_[x]; }

 private:
  std::uint64_t p_;
  std::vector<signed char> chi_;
};

/// a = p + 1 - #E(F_p) via the character sum -sum_x chi(x^3 + r x + s).
std::int64_t trace_of_frobenius(const CurveFp& e);
std::int64_t trace_of_frobenius(const CurveFp& e, const LegendreTable& chi);

/// Number of F_p-rational points, including infinity.
std::uint64_t point_count(const CurveFp& e);

struct PointFp {
  bool infinity = true;
  std::uint64_t x = 0;
  std::uint64_t y = 0;

  static PointFp at_infinity() { return {}; }
  static PointFp affine(std::uint64_t x, std::uint64_t y) { return {false, x, y}; }
  bool operator==(const PointFp&) const = default;
};

bool on_curve(const CurveFp& e, const PointFp& pt);
/// Group law; inputs off the curve throw OffCurve.
PointFp add(const CurveFp& e, const PointFp& a, const PointFp& b);
PointFp negate(const CurveFp& e, const PointFp& a);
PointFp scalar_mul(const CurveFp& e, const BigInt& k, const PointFp& a);
/// All F_p-rational points, infinity first, then by (x, y).
std::vector<PointFp> rational_points(const CurveFp& e);

/// The x-part g_n of the n-th division polynomial: psi_n = g_n for odd n and
/// psi_n = y * g_n for even n (so g_2 = 2 and psi_2^2 = 4 (x^3 + r x + s)).
PolyModP division_polynomial(const CurveFp& e, unsigned n);

/// g_0, ..., g_count-1, optionally reduced modulo `modulus` (which must be
/// over the same field). Every g_m is an integral polynomial identity, so
/// reduction commutes with the recurrence.
std::vector<PolyModP> division_polynomial_sequence(const CurveFp& e, unsigned count,
                                                   const PolyModP* modulus = nullptr);

/// Monic squarefree polynomial whose roots over the algebraic closure are
/// exactly the x-coordinates of the nonzero n-torsion points (p does not
/// divide n). For odd n it is psi_n made monic; for even n it is the product
/// of the x-part of psi_n and the 2-division cubic.
PolyModP torsion_x_polynomial(const CurveFp& e, unsigned n);

}  // namespace serrelab
