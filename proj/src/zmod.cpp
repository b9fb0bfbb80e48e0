#include "serrelab/zmod.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

namespace serrelab {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::SingularCurve: return "SingularCurve";
    case Errc::BadCharacteristic: return "BadCharacteristic";
    case Errc::OffCurve: return "OffCurve";
    case Errc::MismatchedCharacteristic: return "MismatchedCharacteristic";
    case Errc::IncompatibleCongruences: return "IncompatibleCongruences";
    case Errc::NonElliptic: return "NonElliptic";
    case Errc::OddLevel: return "OddLevel";
    case Errc::LevelTooLarge: return "LevelTooLarge";
    case Errc::IndefiniteForm: return "IndefiniteForm";
    case Errc::ParityMismatch: return "ParityMismatch";
    case Errc::InvalidConductor: return "InvalidConductor";
    case Errc::InadmissibleOrder: return "InadmissibleOrder";
    case Errc::EmptyFamily: return "EmptyFamily";
    case Errc::DegenerateParameter: return "DegenerateParameter";
    case Errc::SingularInput: return "SingularInput";
    case Errc::Overflow: return "Overflow";
  }
  return "Unknown";
}

namespace {

bool is_squarefree(const BigInt& n) {
  if (n == 0) return false;
  return squarefree_part(n).value() == n;
}

}  // namespace

SquarefreeInt::SquarefreeInt(BigInt value) : value_(std::move(value)) {
  if (value_ == 0) throw Error(Errc::InvalidArgument, "squarefree integer must be nonzero");
  if (!is_squarefree(value_)) {
    throw Error(Errc::InvalidArgument, value_.get_str() + " is not squarefree");
  }
}

int kronecker(const BigInt& w, const BigInt& n) {
  if (w == 0 && n == 0) throw Error(Errc::InvalidArgument, "kronecker(0, 0) is undefined");
  return mpz_kronecker(w.get_mpz_t(), n.get_mpz_t());
}

SquarefreeInt squarefree_part(const BigInt& n) {
  if (n == 0) throw Error(Errc::InvalidArgument, "squarefree_part(0)");
  BigInt m = abs(n);
  BigInt sf = 1;
  auto strip = [&](unsigned long d) {
    int e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), d)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), d);
      ++e;
    }
    if (e % 2 == 1) sf *= d;
  };
  strip(2);
  strip(3);
  // Remove every prime d with d^3 <= m; what remains has at most two prime
  // factors, so it is either a perfect square or contributes itself.
  for (unsigned long d = 5, step = 2; BigInt(d) * d * d <= m; d += step, step = 6 - step) {
    strip(d);
  }
  if (m != 1 && !mpz_perfect_square_p(m.get_mpz_t())) sf *= m;
  if (n < 0) sf = -sf;
  return SquarefreeInt(std::move(sf), SquarefreeInt::Trusted{});
}

Congruence crt_combine(std::span<const Congruence> parts) {
  Congruence acc{0, 1};
  for (const auto& part : parts) {
    if (part.modulus <= 0) throw Error(Errc::InvalidArgument, "CRT modulus must be positive");
    BigInt r2 = part.residue % part.modulus;
    if (r2 < 0) r2 += part.modulus;
    BigInt g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), acc.modulus.get_mpz_t(),
               part.modulus.get_mpz_t());
    BigInt diff = r2 - acc.residue;
    if (diff % g != 0) {
      throw Error(Errc::IncompatibleCongruences,
                  "congruences mod " + acc.modulus.get_str() + " and " + part.modulus.get_str() +
                      " disagree");
    }
    BigInt lcm = acc.modulus / g * part.modulus;
    // x = r1 + m1 * s * (r2 - r1) / g
    BigInt x = acc.residue + acc.modulus * s * (diff / g);
    x %= lcm;
    if (x < 0) x += lcm;
    acc = {x, lcm};
  }
  return acc;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (e > 0) {
    if (e & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    e >>= 1;
  }
  return result;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::tie(t, new_t) = std::pair{new_t, t - q * new_t};
    std::tie(r, new_r) = std::pair{new_r, r - q * new_r};
  }
  if (r != 1) {
    if (m == 1) return 0;
    throw Error(Errc::InvalidArgument,
                std::to_string(a) + " is not invertible mod " + std::to_string(m));
  }
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

std::uint64_t reduce_mod(std::int64_t a, std::uint64_t m) {
  std::int64_t mm = static_cast<std::int64_t>(m);
  std::int64_t r = a % mm;
  return static_cast<std::uint64_t>(r < 0 ? r + mm : r);
}

std::uint64_t reduce_mod(const BigInt& a, std::uint64_t m) {
  return mpz_fdiv_ui(a.get_mpz_t(), m);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // This witness set is deterministic for all n < 2^64.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint32_t> primes_up_to(std::uint32_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

std::vector<std::pair<std::uint64_t, int>> factorize(std::uint64_t n) {
  if (n == 0) throw Error(Errc::InvalidArgument, "factorize(0)");
  std::vector<std::pair<std::uint64_t, int>> out;
  for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    if (n % d != 0) continue;
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<std::uint64_t> divisors(std::uint64_t n) {
  std::vector<std::uint64_t> out{1};
  for (auto [p, e] : factorize(n)) {
    const std::size_t base = out.size();
    std::uint64_t pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
  std::uint64_t phi = n;
  for (auto [p, e] : factorize(n)) phi = phi / p * (p - 1);
  return phi;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw Error(Errc::Overflow, "int64 multiply");
  return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw Error(Errc::Overflow, "int64 add");
  return out;
}

std::int64_t to_int64(const BigInt& v) {
  if (!v.fits_slong_p()) throw Error(Errc::Overflow, v.get_str() + " does not fit in 64 bits");
  return v.get_si();
}

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace serrelab
