#pragma once

// Counting experiments: Frobenius classes of all curves over F_p against the
// class-number formula, Deuring counts, the Chebotarev mean-square statistic,
// and censuses over the height family C(X).

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "serrelab/families.hpp"
#include "serrelab/gl2.hpp"
#include "serrelab/qforms.hpp"
#include "serrelab/serre.hpp"

namespace serrelab {

// ---------------------------------------------------------------------------
// Frobenius classes over F_p

/// Number of curves (r, s) over F_p whose sigma mod N falls in each class of
/// the table. Entries for classes with det != p mod N are zero.
std::vector<std::uint64_t> omega_enumerate_all(std::uint64_t p, const ClassTable& table);
std::uint64_t omega_enumerate(std::uint64_t p, const ClassTable& table, std::size_t class_index);

/// The class-number formula for the same count. Returns 0 unless
/// p = det C mod N. The table must cover |t^2 - 4p|; it grows on demand
/// when none is supplied.
BigInt omega_formula(std::uint64_t p, const ClassDescriptor& desc, const ClassNumberTable* table = nullptr);

/// |C| phi(N) / |GL2(Z/NZ)| * p^2.
Rational omega_main_term(std::uint64_t p, const ConjugacyClass& cls);

struct OmegaReport {
  std::uint64_t p = 0;
  std::size_t class_index = 0;
  ClassDescriptor descriptor;
  std::optional<std::uint64_t> enumerated;  // absent when only the formula ran
  BigInt formula;
  Rational main_term;
  BigInt residual;  // count - round(main_term), count = enumerated if present
};

/// One row per class with det = p mod N; enumerate=false skips brute force.
std::vector<OmegaReport> omega_reports(std::uint64_t p, const ClassTable& table, bool enumerate,
                                       const ClassNumberTable* class_numbers = nullptr);

/// (p - 1) / w(O) * h(O): curves with trace t and End = O. Throws
/// InadmissibleOrder unless t^2 < 4p, O contains Z[phi] and (t = 0) p does
/// not divide the conductor of O.
std::uint64_t deuring_count(std::uint64_t p, std::int64_t t, const OrderDisc& order);

/// Per-trace curve counts over F_p, indexed by t + floor(2 sqrt p).
std::vector<std::uint64_t> trace_histogram(std::uint64_t p);

struct EichlerReport {
  std::uint64_t p = 0;
  Rational mass;
  Rational deviation;  // mass - 2p
};

/// Sum over t^2 < 4p and admissible conductors f of (2/w) h((t^2 - 4p)/f^2).
EichlerReport eichler_mass(std::uint64_t p);

// ---------------------------------------------------------------------------
// Curves over Q

struct PiCount {
  std::uint64_t count = 0;     // good primes with sigma mod N in the class
  std::uint64_t good = 0;      // primes 5 <= p <= X with p not dividing N disc
  std::uint64_t skipped = 0;   // primes <= X that are < 5 or divide N disc
};

PiCount pi_e_count(const RationalCurve& e, std::uint64_t x, const ClassTable& table, std::size_t class_index);

/// Counts of primes p <= X with p = d mod N.
std::uint64_t primes_in_progression(std::uint64_t x, std::uint32_t n, std::uint32_t d);

struct MeanSquareOptions {
  std::size_t cap = 100000;  // exhaustive up to this family size
  std::uint64_t seed = 1;
  unsigned threads = 1;
};

struct MeanSquareReport {
  std::uint64_t x = 0;
  std::uint32_t level = 1;
  std::size_t class_index = 0;
  ClassDescriptor descriptor;
  std::size_t family_size = 0;
  std::size_t curves_used = 0;
  bool sampled = false;
  Rational expected;     // |C| phi(N) / |GL2| * pi(X; N, d)
  Rational mean_square;
  Rational bound_ratio;  // mean_square / (N^8 X)
};

/// Reports for every class at the level; the family is walked once.
std::vector<MeanSquareReport> chebotarev_mean_square_all(std::uint64_t x, const ClassTable& table,
                                                         const std::vector<RationalCurve>& family,
                                                         const MeanSquareOptions& options = {});
MeanSquareReport chebotarev_mean_square(std::uint64_t x, const ClassTable& table, std::size_t class_index,
                                        const std::vector<RationalCurve>& family,
                                        const MeanSquareOptions& options = {});

/// Uniform draw from [0, bound) by rejection on raw 64-bit outputs.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound);

struct EpsilonCensusReport {
  std::uint64_t x = 0;
  std::uint32_t level = 1;
  std::uint64_t prime_bound = 0;
  std::uint64_t total = 0;
  std::uint64_t flagged = 0;
};

inline constexpr std::uint64_t kDefaultCensusPrimeBound = 200;

/// Curves of C(X) whose sampled closure at N misses some (t, d) pair with d
/// in the group generated by the sampled determinants.
EpsilonCensusReport epsilon_n_census(std::uint64_t x, std::uint32_t n,
                                     std::uint64_t bound = kDefaultCensusPrimeBound, unsigned threads = 1);

struct CensusReport {
  std::uint64_t x = 0;
  std::uint64_t prime_bound = 0;
  std::uint64_t total = 0;
  std::uint64_t certified = 0;
  /// Curves for which condition i + 1 did not pass (failed or unknown).
  std::array<std::uint64_t, 4> failures_by_condition{};
  /// Curves for which condition i + 1 failed with a witness.
  std::array<std::uint64_t, 4> witnessed_by_condition{};

  double certified_fraction() const { return total ? static_cast<double>(certified) / total : 0.0; }
};

CensusReport serre_census(std::uint64_t x, std::uint64_t bound = kDefaultPrimeBound, unsigned threads = 1);

}  // namespace serrelab
