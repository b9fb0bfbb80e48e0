#include "serrelab/ec_fp.hpp"

#include <string>

namespace serrelab {

bool is_singular_mod(std::uint64_t p, std::uint64_t r, std::uint64_t s) {
  const std::uint64_t r3 = mul_mod(mul_mod(r, r, p), r, p);
  const std::uint64_t s2 = mul_mod(s, s, p);
  return (mul_mod(4, r3, p) + mul_mod(27, s2, p)) % p == 0;
}

CurveFp::CurveFp(std::uint64_t p, std::int64_t r, std::int64_t s) : p_(p), r_(0), s_(0) {
  validate();
  r_ = reduce_mod(r, p_);
  s_ = reduce_mod(s, p_);
  if (is_singular_mod(p_, r_, s_)) {
    throw Error(Errc::SingularCurve, "4r^3 + 27s^2 = 0 mod " + std::to_string(p_));
  }
}

CurveFp::CurveFp(std::uint64_t p, const BigInt& r, const BigInt& s) : p_(p), r_(0), s_(0) {
  validate();
  r_ = reduce_mod(r, p_);
  s_ = reduce_mod(s, p_);
  if (is_singular_mod(p_, r_, s_)) {
    throw Error(Errc::SingularCurve, "4r^3 + 27s^2 = 0 mod " + std::to_string(p_));
  }
}

void CurveFp::validate() const {
  if (p_ < 5 || p_ > kMaxWordModulus || !is_prime(p_)) {
    throw Error(Errc::BadCharacteristic, "need a prime p >= 5, got " + std::to_string(p_));
  }
}

std::uint64_t CurveFp::rhs(std::uint64_t x) const {
  x %= p_;
  return (mul_mod(mul_mod(x, x, p_) + r_, x, p_) + s_) % p_;
}

PolyModP CurveFp::cubic() const { return PolyModP(p_, std::vector<std::uint64_t>{s_, r_, 0, 1}); }

LegendreTable::LegendreTable(std::uint64_t p) : p_(p), chi_(p, -1) {
  chi_[0] = 0;
  for (std::uint64_t x = 1; x <= p / 2; ++x) chi_[mul_mod(x, x, p)] = 1;
}

std::int64_t trace_of_frobenius(const CurveFp& e, const LegendreTable& chi) {
  if (chi.p() != e.p()) throw Error(Errc::MismatchedCharacteristic, "Legendre table for another prime");
  const std::uint64_t p = e.p();
  std::int64_t sum = 0;
  // x^3 + r x + s updated incrementally would need a second difference; the
  // direct evaluation is cheap enough and keeps the sum obviously correct.
  for (std::uint64_t x = 0; x < p; ++x) sum += chi(e.rhs(x));
  return -sum;
}

std::int64_t trace_of_frobenius(const CurveFp& e) { return trace_of_frobenius(e, LegendreTable(e.p())); }

std::uint64_t point_count(const CurveFp& e) {
  return static_cast<std::uint64_t>(static_cast<std::int64_t>(e.p()) + 1 - trace_of_frobenius(e));
}

bool on_curve(const CurveFp& e, const PointFp& pt) {
  if (pt.infinity) return true;
  if (pt.x >= e.p() || pt.y >= e.p()) return false;
  return mul_mod(pt.y, pt.y, e.p()) == e.rhs(pt.x);
}

namespace {

void require_on_curve(const CurveFp& e, const PointFp& pt) {
  if (!on_curve(e, pt)) throw Error(Errc::OffCurve, "point is not on the curve");
}

}  // namespace

PointFp negate(const CurveFp& e, const PointFp& a) {
  require_on_curve(e, a);
  if (a.infinity) return a;
  return PointFp::affine(a.x, (e.p() - a.y) % e.p());
}

PointFp add(const CurveFp& e, const PointFp& a, const PointFp& b) {
  require_on_curve(e, a);
  require_on_curve(e, b);
  const std::uint64_t p = e.p();
  if (a.infinity) return b;
  if (b.infinity) return a;
  std::uint64_t slope;
  if (a.x == b.x) {
    if ((a.y + b.y) % p == 0) return PointFp::at_infinity();
    const std::uint64_t num = (mul_mod(3, mul_mod(a.x, a.x, p), p) + e.r()) % p;
    slope = mul_mod(num, inv_mod(mul_mod(2, a.y, p), p), p);
  } else {
    const std::uint64_t num = (b.y + p - a.y) % p;
    const std::uint64_t den = (b.x + p - a.x) % p;
    slope = mul_mod(num, inv_mod(den, p), p);
  }
  const std::uint64_t x3 = (mul_mod(slope, slope, p) + 2 * p - a.x - b.x) % p;
  const std::uint64_t y3 = (mul_mod(slope, (a.x + p - x3) % p, p) + p - a.y) % p;
  return PointFp::affine(x3, y3);
}

PointFp scalar_mul(const CurveFp& e, const BigInt& k, const PointFp& a) {
  require_on_curve(e, a);
  PointFp base = k < 0 ? negate(e, a) : a;
  const BigInt n = abs(k);
  PointFp acc = PointFp::at_infinity();
  const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  if (n == 0) return acc;
  for (std::size_t i = bits; i-- > 0;) {
    acc = add(e, acc, acc);
    if (mpz_tstbit(n.get_mpz_t(), i)) acc = add(e, acc, base);
  }
  return acc;
}

std::vector<PointFp> rational_points(const CurveFp& e) {
  const std::uint64_t p = e.p();
  std::vector<std::uint64_t> root_of(p, p);  // p marks "no square root"
  for (std::uint64_t y = 0; y < p; ++y) {
    const std::uint64_t sq = mul_mod(y, y, p);
    if (root_of[sq] == p) root_of[sq] = y;
  }
  std::vector<PointFp> out{PointFp::at_infinity()};
  for (std::uint64_t x = 0; x < p; ++x) {
    const std::uint64_t v = e.rhs(x);
    const std::uint64_t y = root_of[v];
    if (y == p) continue;
    if (y == 0) {
      out.push_back(PointFp::affine(x, 0));
    } else {
      const std::uint64_t y2 = p - y;
      out.push_back(PointFp::affine(x, std::min(y, y2)));
      out.push_back(PointFp::affine(x, std::max(y, y2)));
    }
  }
  return out;
}

std::vector<PolyModP> division_polynomial_sequence(const CurveFp& e, unsigned count,
                                                   const PolyModP* modulus) {
  const std::uint64_t p = e.p();
  const std::uint64_t r = e.r(), s = e.s();
  auto red = [&](PolyModP f) { return modulus ? f % *modulus : f; };
  const PolyModP c = red(e.cubic());
  const PolyModP c2 = red(c * c);
  const std::uint64_t half = inv_mod(2, p);
  const std::uint64_t r2 = mul_mod(r, r, p);

  std::vector<PolyModP> g;
  g.reserve(count);
  auto push_base = [&](PolyModP f) {
    if (g.size() < count) g.push_back(red(std::move(f)));
  };
  push_base(PolyModP(p));                                                  // g_0 = 0
  push_base(PolyModP::constant(p, 1));                                     // g_1 = 1
  push_base(PolyModP::constant(p, 2));                                     // g_2 = 2
  push_base(PolyModP(p, {static_cast<std::int64_t>((p - r2) % p),          // g_3
                         static_cast<std::int64_t>(mul_mod(12, s, p)),
                         static_cast<std::int64_t>(mul_mod(6, r, p)), 0, 3}));
  {
    // g_4 = 4 (x^6 + 5 r x^4 + 20 s x^3 - 5 r^2 x^2 - 4 r s x - 8 s^2 - r^3)
    const std::uint64_t r3 = mul_mod(r2, r, p);
    const std::uint64_t c0 = (2 * p - mul_mod(8, mul_mod(s, s, p), p) - r3) % p;
    const std::uint64_t c1 = (p - mul_mod(4, mul_mod(r, s, p), p)) % p;
    const std::uint64_t c2c = (p - mul_mod(5, r2, p)) % p;
    PolyModP g4(p, std::vector<std::uint64_t>{c0, c1, c2c, mul_mod(20, s, p), mul_mod(5, r, p), 0, 1});
    push_base(g4.scaled(4));
  }
  for (unsigned n = 5; n < count; ++n) {
    const unsigned m = n / 2;
    PolyModP next(p);
    if (n % 2 == 1) {
      // psi_{2m+1} = psi_{m+2} psi_m^3 - psi_{m-1} psi_{m+1}^3; the even-index
      // factors carry y, whose square is the cubic.
      PolyModP left = g[m + 2] * red(g[m] * red(g[m] * g[m]));
      PolyModP right = g[m - 1] * red(g[m + 1] * red(g[m + 1] * g[m + 1]));
      left = red(std::move(left));
      right = red(std::move(right));
      if (m % 2 == 0) {
        next = red(c2 * left) - right;
      } else {
        next = left - red(c2 * right);
      }
    } else {
      // psi_{2m} = psi_m (psi_{m+2} psi_{m-1}^2 - psi_{m-2} psi_{m+1}^2) / (2y)
      PolyModP inner = red(g[m + 2] * red(g[m - 1] * g[m - 1])) - red(g[m - 2] * red(g[m + 1] * g[m + 1]));
      next = red(g[m] * inner).scaled(half);
    }
    g.push_back(red(std::move(next)));
  }
  (void)c;
  return g;
}

PolyModP division_polynomial(const CurveFp& e, unsigned n) {
  if (n == 0) throw Error(Errc::InvalidArgument, "division polynomial index must be >= 1");
  return division_polynomial_sequence(e, n + 1).back();
}

PolyModP torsion_x_polynomial(const CurveFp& e, unsigned n) {
  if (n == 0) throw Error(Errc::InvalidArgument, "torsion level must be >= 1");
  if (n % e.p() == 0) throw Error(Errc::InvalidArgument, "torsion level divisible by the characteristic");
  const PolyModP g = division_polynomial(e, n);
  if (n % 2 == 1) return g.monic();
  return (g * e.cubic()).monic();
}

}  // namespace serrelab
