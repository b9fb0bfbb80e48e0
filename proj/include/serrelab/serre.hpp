#pragma once

// Serre numbers, the Serre subgroup, surjectivity certificates built from
// sampled Frobenius matrices, and a sufficient-condition Serre curve test.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "serrelab/families.hpp"
#include "serrelab/gl2.hpp"

namespace serrelab {

struct SerreNumber {
  SquarefreeInt w{BigInt(1)};
  BigInt d_w;  // |W| if W = 1 mod 4, else 4|W|
  BigInt m_w;  // lcm(2, D_W)
};

SerreNumber serre_number(const SquarefreeInt& w);
/// Uses the squarefree part of the discriminant of the canonical model.
SerreNumber serre_number(const RationalCurve& e);

/// (W / det g) * epsilon(g) == +1, for g at level M_W.
bool serre_subgroup_contains(const SquarefreeInt& w, const MatrixModN& g);

enum class CertificateStatus { SurjectiveCertified, ProperSubgroup, Inconclusive };
std::string_view to_string(CertificateStatus s);

struct Certificate {
  std::uint32_t level = 1;
  CertificateStatus status = CertificateStatus::Inconclusive;
  /// Index of a proper subgroup meeting every sampled Frobenius class
  /// (1 when none exists); 0 when the prime-level trace test did not decide.
  std::uint64_t closure_index = 0;
  std::size_t generators_used = 0;
  std::uint64_t prime_bound = 0;
};

/// Sampled Frobenius matrices of one curve, reused across levels.
class FrobeniusSample {
 public:
  FrobeniusSample(const RationalCurve& e, std::uint64_t bound);
  const RationalCurve& curve() const noexcept { return curve_; }
  std::uint64_t bound() const noexcept { return bound_; }
  const std::vector<FrobeniusData>& data() const noexcept { return data_; }
  /// sigma mod N for the sampled primes not dividing N.
  std::vector<MatrixModN> generators(std::uint32_t n) const;

 private:
  RationalCurve curve_;
  std::uint64_t bound_;
  std::vector<FrobeniusData> data_;
};

/// SurjectiveCertified when no proper subgroup of GL2(Z/NZ) meets every
/// sampled Frobenius class, so the image must be everything. Prime levels
/// l >= 5 use the trace criterion plus surjectivity of the determinant;
/// other levels must lie within the enumeration bound.
Certificate surjectivity_certificate(const FrobeniusSample& sample, std::uint32_t n);
Certificate surjectivity_certificate(const RationalCurve& e, std::uint32_t n, std::uint64_t bound);

enum class ConditionState { Pass, Fail, Unknown };
enum class Verdict { CertifiedUpToB, NotCertified, Unknown };
std::string_view to_string(ConditionState s);
std::string_view to_string(Verdict v);

inline constexpr std::uint64_t kDefaultPrimeBound = 37;

struct SerreVerdict {
  /// Conditions 1-4: no exceptional primes <= B; surjective at 4 and 9;
  /// index at 8 is not 2; a prime > 3 divides M_W.
  std::array<ConditionState, 4> conditions{ConditionState::Unknown, ConditionState::Unknown,
                                           ConditionState::Unknown, ConditionState::Unknown};
  Verdict verdict = Verdict::Unknown;
  /// First failed condition (1-4) when NotCertified, else 0.
  int failed_condition = 0;
  std::string witness;
  std::uint64_t prime_bound = 0;
  SerreNumber serre;
  /// Levels whose sampled closure was not full (conditions 1-3).
  std::vector<std::uint32_t> open_levels;
};

SerreVerdict certify_serre_curve(const RationalCurve& e, std::uint64_t bound = kDefaultPrimeBound);

/// Levels N <= max_level whose sampled closure is proper while the closures
/// at every proper divisor > 1 are full. Only upper-bound evidence.
std::vector<std::uint32_t> minimal_exceptional_scan(const RationalCurve& e, std::uint32_t max_level,
                                                    std::uint64_t bound);

/// Integer roots of a monic integral polynomial (coefficients lowest degree
/// first), each reported once in ascending order.
std::vector<BigInt> integer_roots(const std::vector<BigInt>& coeffs);

}  // namespace serrelab
