#pragma once

// Exact integer and residue arithmetic shared by every other module.
//
// Unbounded quantities are GMP integers/rationals. Residues modulo a
// validated word-sized modulus are plain 64-bit words; the moduli are
// range-checked where they enter so products never wrap.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "serrelab/error.hpp"

namespace serrelab {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Largest modulus accepted for word-sized residue arithmetic.
inline constexpr std::uint64_t kMaxWordModulus = (std::uint64_t{1} << 31) - 1;

/// A nonzero signed squarefree integer.
class SquarefreeInt {
 public:
  /// Throws InvalidArgument if value is zero or divisible by a square > 1.
  explicit SquarefreeInt(BigInt value);

  const BigInt& value() const noexcept { return value_; }
  bool operator==(const SquarefreeInt&) const = default;

 private:
  struct Trusted {};
  SquarefreeInt(BigInt value, Trusted) : value_(std::move(value)) {}
  friend SquarefreeInt squarefree_part(const BigInt& n);

  BigInt value_;
};

/// Kronecker symbol (w / n). At n = 0 it is 1 for w = +-1 and 0 otherwise.
/// Precondition (w, n) != (0, 0).
int kronecker(const BigInt& w, const BigInt& n);

/// The unique squarefree sf with n = m^2 * sf, m > 0, sign(sf) = sign(n).
SquarefreeInt squarefree_part(const BigInt& n);

struct Congruence {
  BigInt residue;
  BigInt modulus;
};

/// Combines x = r_i mod m_i into one class modulo lcm(m_i). Non-coprime
/// moduli are accepted when the congruences agree on the overlap; otherwise
/// throws IncompatibleCongruences.
Congruence crt_combine(std::span<const Congruence> parts);

// ---------------------------------------------------------------------------
// Word-sized helpers.

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m);
/// Inverse of a modulo m; throws InvalidArgument when gcd(a, m) != 1.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);
/// Least nonnegative residue of a signed value.
std::uint64_t reduce_mod(std::int64_t a, std::uint64_t m);
std::uint64_t reduce_mod(const BigInt& a, std::uint64_t m);

/// Deterministic primality for 64-bit inputs.
bool is_prime(std::uint64_t n);
/// Primes in [2, limit], ascending.
std::vector<std::uint32_t> primes_up_to(std::uint32_t limit);

/// Trial-division factorization of n >= 1 into (prime, exponent) pairs.
std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n);
/// All positive divisors of n, ascending.
std::vector<std::uint64_t> divisors(std::uint64_t n);
std::uint64_t euler_phi(std::uint64_t n);

/// Overflow-checked signed arithmetic; throws Overflow instead of wrapping.
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t checked_add(std::int64_t a, std::int64_t b);

/// Converts a BigInt that must fit in int64; throws Overflow otherwise.
std::int64_t to_int64(const BigInt& v);

/// Floor of the real square root.
std::uint64_t isqrt(std::uint64_t n);

}  // namespace serrelab
