#pragma once

// Curves over Q: canonical models, the height family C(X), and the
// one-parameter family E_s that is exceptional at 4.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "serrelab/gl2.hpp"
#include "serrelab/zmod.hpp"

namespace serrelab {

/// y^2 = x^3 + r x + s with integral, twelfth-power-free coefficients.
struct RationalCurve {
  BigInt r, s;
  BigInt height;  // max(|r|^3, s^2)
  BigInt disc;    // -16 (4 r^3 + 27 s^2)

  std::string to_string() const;
  bool operator==(const RationalCurve&) const = default;
};

/// Divides (r, s) by (u^4, u^6) for the largest integer u that keeps them
/// integral. Throws SingularCurve when 4 r^3 + 27 s^2 = 0.
RationalCurve canonical_model(const BigInt& r, const BigInt& s);

/// Calls visit(r, s) for every curve of C(X) (|r| <= X^2, |s| <= X^3,
/// nonsingular, canonical), r ascending then s ascending.
void for_each_family_member(std::uint64_t x, const std::function<void(std::int64_t, std::int64_t)>& visit);
std::vector<RationalCurve> enumerate_family(std::uint64_t x);
std::uint64_t family_count(std::uint64_t x);

/// Dense polynomial with rational coefficients, lowest degree first.
class RationalPoly {
 public:
  RationalPoly() = default;
  explicit RationalPoly(std::vector<Rational> coeffs);

  int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
  const Rational& coeff(std::size_t i) const { return c_.at(i); }
  const std::vector<Rational>& coeffs() const noexcept { return c_; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  Rational eval(const Rational& t) const;
  std::string to_string() const;

 private:
  std::vector<Rational> c_;
};

struct TorsionPolynomials {
  RationalPoly f4;  // degree 6: x-coordinates of the points of exact order 4
  RationalPoly f1;  // degree 4
};

/// The two explicit polynomials attached to y^2 = 4x^3 - g2 x - g3.
/// Throws SingularInput when g2^3 - 27 g3^2 = 0.
TorsionPolynomials torsion_polynomials(const Rational& g2, const Rational& g3);

struct EsCurve {
  Rational s;
  Rational a_coeff;  // y^2 = 4x^3 + A x + B
  Rational b_coeff;
  Rational g2;  // -A
  Rational g3;  // -B
  Rational disc;  // g2^3 - 27 g3^2
  Rational j;     // 1728 g2^3 / disc
  RationalCurve integral_model;
};

/// Throws DegenerateParameter when s = 0 or (16 s^2 + 56 s + 81)(4 s + 3) = 0.
EsCurve es_curve(const Rational& s);

struct EsIdentityReport {
  Rational s;
  Rational f1_root;  // -(27 + 56 s / 3 + 16 s^2 / 3)
  bool f1_linear_factor = false;
  bool disc_identity = false;
  bool j_identity = false;
  bool all() const { return f1_linear_factor && disc_identity && j_identity; }
};

EsIdentityReport verify_es_identities(const Rational& s);

struct EsMod4Report {
  Rational s;
  RationalCurve model;
  std::uint64_t bound = 0;
  std::size_t generators_used = 0;
  /// Largest index of a subgroup of GL2(Z/4Z) meeting every sampled class.
  std::uint64_t index_at_4 = 0;
  /// No proper subgroup of GL2(Z/2Z) meets every sampled class.
  bool full_at_2 = false;
  /// The subgroup attaining index_at_4 maps onto GL2(Z/2Z).
  bool cover_surjects_mod_2 = false;
};

EsMod4Report es_mod4_image(const Rational& s, std::uint64_t bound);

}  // namespace serrelab
