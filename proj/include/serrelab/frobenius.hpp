#pragma once

// Endomorphism data of a reduced curve: the trace a, the index b of Z[phi]
// in End(E), the discriminant of End(E) and the integral matrix sigma of
// trace a and determinant p that represents Frobenius at every level.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "serrelab/ec_fp.hpp"

namespace serrelab {

struct IntMatrix2 {
  std::int64_t a = 0, b = 0, c = 0, d = 0;

  std::int64_t trace() const { return a + d; }
  std::int64_t det() const { return a * d - b * c; }
  bool operator==(const IntMatrix2&) const = default;
};

struct ConductorSplit {
  std::int64_t f0 = 1;  // a^2 - 4p = f0^2 * fundamental_disc
  std::int64_t fundamental_disc = 0;
};

/// Splits a^2 - 4p into f0^2 times a fundamental discriminant.
/// Throws NonElliptic when a^2 >= 4p.
ConductorSplit conductor_split(std::int64_t a, std::uint64_t p);

struct FrobeniusData {
  std::uint64_t p = 0;
  std::int64_t a = 0;
  std::int64_t b = 1;
  std::int64_t delta = 0;  // discriminant of End(E), (a^2 - 4p) / b^2
  IntMatrix2 sigma;

  std::string to_string() const;
  bool operator==(const FrobeniusData&) const = default;
};

/// Residues lambda in [0, n) with 2 lambda = a and lambda^2 = p mod n.
std::vector<std::uint64_t> admissible_scalars(std::int64_t a, std::uint64_t p, std::uint64_t n);

/// True iff Frobenius acts on E[n] as multiplication by lambda. Inadmissible
/// lambda (or n sharing a factor with p) gives false; n = 1 gives true.
bool frobenius_acts_as_scalar(const CurveFp& e, std::uint64_t n, std::uint64_t lambda);
/// Same test with the trace already known.
bool frobenius_acts_as_scalar(const CurveFp& e, std::int64_t trace, std::uint64_t n, std::uint64_t lambda);

/// b = [End(E) : Z[phi]], the largest divisor of f0 on whose torsion
/// Frobenius acts as a scalar.
std::int64_t frobenius_index(const CurveFp& e);
std::int64_t frobenius_index(const CurveFp& e, std::int64_t trace);

/// Assembles (a, b, Delta, sigma) from the trace and index; throws
/// InvalidArgument when b^2 does not divide a^2 - 4p with a discriminant
/// quotient.
FrobeniusData frobenius_data(std::uint64_t p, std::int64_t a, std::int64_t b);

FrobeniusData sigma_matrix(const CurveFp& e);
FrobeniusData sigma_matrix(const CurveFp& e, const LegendreTable& chi);

/// Frobenius data of y^2 = x^3 + r x + s (integral coefficients) at every
/// prime 5 <= p <= bound with p not dividing disc or avoid.
std::vector<FrobeniusData> sample_frobenius(const BigInt& r, const BigInt& s, const BigInt& disc,
                                            std::uint64_t bound, std::uint64_t avoid = 1);

}  // namespace serrelab
