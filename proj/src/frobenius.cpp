#include "serrelab/frobenius.hpp"

#include <sstream>

namespace serrelab {

ConductorSplit conductor_split(std::int64_t a, std::uint64_t p) {
  const std::int64_t disc = checked_add(checked_mul(a, a), -checked_mul(4, static_cast<std::int64_t>(p)));
  if (disc >= 0) {
    throw Error(Errc::NonElliptic, "a^2 - 4p = " + std::to_string(disc) + " is not negative");
  }
  const std::int64_t sf = to_int64(squarefree_part(BigInt(disc)).value());
  const std::int64_t m = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(disc / sf)));
  if (((sf % 4) + 4) % 4 == 1) return {m, sf};
  return {m / 2, 4 * sf};
}

std::vector<std::uint64_t> admissible_scalars(std::int64_t a, std::uint64_t p, std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n == 0) return out;
  const std::uint64_t a_mod = reduce_mod(a, n);
  const std::uint64_t p_mod = p % n;
  for (std::uint64_t lam = 0; lam < n; ++lam) {
    if ((2 * lam) % n == a_mod && mul_mod(lam, lam, n) == p_mod) out.push_back(lam);
  }
  return out;
}

namespace {

// Checks Frobenius = [lambda] on E[n] for an admissible unit lambda.
bool scalar_action_holds(const CurveFp& e, std::uint64_t n, std::uint64_t lambda) {
  const std::uint64_t p = e.p();
  // [n - lambda] differs from [lambda] only by the sign of y.
  const bool negated = lambda > n - lambda;
  const std::uint64_t m = negated ? n - lambda : lambda;

  const auto g = division_polynomial_sequence(e, static_cast<unsigned>(std::max<std::uint64_t>(n, 2 * m) + 2));
  const PolyModP c = e.cubic();
  const PolyModP torsion = n % 2 == 1 ? g[n].monic() : (g[n] * c).monic();

  const PolyModP x = PolyModP::monomial(p, 1);
  const PolyModP xp = poly_powmod(x, BigInt(static_cast<unsigned long>(p)), torsion);

  // psi_m^2 and psi_{m-1} psi_{m+1} as polynomials in x.
  auto red = [&](const PolyModP& f) { return f % torsion; };
  PolyModP psi_sq = red(g[m] * g[m]);
  PolyModP neighbours = red(g[m - 1] * g[m + 1]);
  if (m % 2 == 0) {
    psi_sq = red(psi_sq * c);
  } else {
    neighbours = red(neighbours * c);
  }
  if (!(red(xp * psi_sq) == red(x * psi_sq) - neighbours)) return false;

  // y-coordinate: y^p = +-psi_{2m} / (2 psi_m^4), divided through by y, on the
  // torsion points with y != 0.
  if (n == 2) return true;
  const PolyModP nonzero_y = n % 2 == 1 ? torsion : g[n].monic();
  auto red_y = [&](const PolyModP& f) { return f % nonzero_y; };
  const PolyModP y_pow = poly_powmod(c, BigInt(static_cast<unsigned long>((p - 1) / 2)), nonzero_y);
  const PolyModP psi_sq_y = red_y(psi_sq);
  const PolyModP lhs = red_y(red_y(y_pow * red_y(psi_sq_y * psi_sq_y)).scaled(2));
  PolyModP rhs = red_y(g[2 * m]);
  if (negated) rhs = PolyModP(p) - rhs;
  return lhs == rhs;
}

}  // namespace

bool frobenius_acts_as_scalar(const CurveFp& e, std::int64_t trace, std::uint64_t n, std::uint64_t lambda) {
  if (n == 0) throw Error(Errc::InvalidArgument, "level must be >= 1");
  if (n == 1) return true;
  if (gcd_u64(n, e.p()) != 1) return false;
  lambda %= n;
  if ((2 * lambda) % n != reduce_mod(trace, n) || mul_mod(lambda, lambda, n) != e.p() % n) return false;
  return scalar_action_holds(e, n, lambda);
}

bool frobenius_acts_as_scalar(const CurveFp& e, std::uint64_t n, std::uint64_t lambda) {
  return frobenius_acts_as_scalar(e, trace_of_frobenius(e), n, lambda);
}

std::int64_t frobenius_index(const CurveFp& e, std::int64_t trace) {
  const ConductorSplit split = conductor_split(trace, e.p());
  std::int64_t b = 1;
  for (auto [ell, exp] : factorize(static_cast<std::uint64_t>(split.f0))) {
    std::uint64_t n = 1;
    for (int k = 1; k <= exp; ++k) {
      const std::uint64_t next = n * ell;
      bool scalar = false;
      for (std::uint64_t lam : admissible_scalars(trace, e.p(), next)) {
        if (scalar_action_holds(e, next, lam)) {
          scalar = true;
          break;
        }
      }
      if (!scalar) break;
      n = next;
    }
    b *= static_cast<std::int64_t>(n);
  }
  return b;
}

std::int64_t frobenius_index(const CurveFp& e) { return frobenius_index(e, trace_of_frobenius(e)); }

FrobeniusData frobenius_data(std::uint64_t p, std::int64_t a, std::int64_t b) {
  const std::int64_t disc = a * a - 4 * static_cast<std::int64_t>(p);
  if (b < 1 || disc >= 0 || disc % (b * b) != 0) {
    throw Error(Errc::InvalidArgument, "inconsistent Frobenius data");
  }
  const std::int64_t delta = disc / (b * b);
  const std::int64_t delta_mod4 = ((delta % 4) + 4) % 4;
  if (delta_mod4 > 1) throw Error(Errc::InvalidArgument, "End discriminant is not 0 or 1 mod 4");
  FrobeniusData out;
  out.p = p;
  out.a = a;
  out.b = b;
  out.delta = delta;
  out.sigma = {(a + b * delta_mod4) / 2, b, b * (delta - delta_mod4) / 4, (a - b * delta_mod4) / 2};
  return out;
}

FrobeniusData sigma_matrix(const CurveFp& e, const LegendreTable& chi) {
  const std::int64_t a = trace_of_frobenius(e, chi);
  return frobenius_data(e.p(), a, frobenius_index(e, a));
}

FrobeniusData sigma_matrix(const CurveFp& e) { return sigma_matrix(e, LegendreTable(e.p())); }

std::string FrobeniusData::to_string() const {
  std::ostringstream os;
  os << "p=" << p << " a=" << a << " b=" << b << " Delta=" << delta << " sigma=((" << sigma.a << "," << sigma.b
     << "),(" << sigma.c << "," << sigma.d << "))";
  return os.str();
}

std::vector<FrobeniusData> sample_frobenius(const BigInt& r, const BigInt& s, const BigInt& disc,
                                            std::uint64_t bound, std::uint64_t avoid) {
  std::vector<FrobeniusData> out;
  if (bound < 5) return out;
  for (std::uint32_t p : primes_up_to(static_cast<std::uint32_t>(bound))) {
    if (p < 5 || avoid % p == 0 || mpz_divisible_ui_p(disc.get_mpz_t(), p)) continue;
    out.push_back(sigma_matrix(CurveFp(p, r, s)));
  }
  return out;
}

}  // namespace serrelab
