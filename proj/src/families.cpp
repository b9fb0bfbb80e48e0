#include "serrelab/families.hpp"

#include <sstream>

namespace serrelab {

namespace {

BigInt disc_of(const BigInt& r, const BigInt& s) { return -16 * (4 * r * r * r + 27 * s * s); }

BigInt height_of(const BigInt& r, const BigInt& s) {
  BigInt r3 = abs(r * r * r);
  BigInt s2 = s * s;
  return r3 > s2 ? r3 : s2;
}

// Largest q^k with q^(4k) | r and q^(6k) | s, accumulated over primes q.
BigInt twelfth_power_scale(const BigInt& r, const BigInt& s) {
  BigInt rr = abs(r), ss = abs(s);
  BigInt u = 1;
  // Any prime to strip satisfies q^4 <= |r| (r != 0) or q^6 <= |s| (r = 0).
  BigInt bound;
  if (rr != 0 && ss != 0) {
    BigInt g;
    mpz_gcd(g.get_mpz_t(), rr.get_mpz_t(), ss.get_mpz_t());
    mpz_root(bound.get_mpz_t(), g.get_mpz_t(), 4);
  } else if (rr != 0) {
    mpz_root(bound.get_mpz_t(), rr.get_mpz_t(), 4);
  } else {
    mpz_root(bound.get_mpz_t(), ss.get_mpz_t(), 6);
  }
  for (unsigned long q = 2; bound >= q; ++q) {
    if ((rr != 0 && !mpz_divisible_ui_p(rr.get_mpz_t(), q)) || (ss != 0 && !mpz_divisible_ui_p(ss.get_mpz_t(), q))) {
      continue;
    }
    if (!is_prime(q)) continue;
    for (;;) {
      const BigInt q4 = BigInt(q) * q * q * q;
      const BigInt q6 = q4 * q * q;
      if (!mpz_divisible_p(rr.get_mpz_t(), q4.get_mpz_t()) || !mpz_divisible_p(ss.get_mpz_t(), q6.get_mpz_t())) break;
      rr /= q4;
      ss /= q6;
      u *= q;
    }
  }
  return u;
}

}  // namespace

std::string RationalCurve::to_string() const {
  std::ostringstream os;
  os << "y^2 = x^3 + (" << r.get_str() << ")x + (" << s.get_str() << ")";
  return os.str();
}

RationalCurve canonical_model(const BigInt& r, const BigInt& s) {
  if (4 * r * r * r + 27 * s * s == 0) throw Error(Errc::SingularCurve, "4r^3 + 27s^2 = 0");
  const BigInt u = twelfth_power_scale(r, s);
  const BigInt u2 = u * u;
  const BigInt u4 = u2 * u2;
  RationalCurve out;
  out.r = r / u4;
  out.s = s / (u4 * u2);
  out.height = height_of(out.r, out.s);
  out.disc = disc_of(out.r, out.s);
  return out;
}

void for_each_family_member(std::uint64_t x, const std::function<void(std::int64_t, std::int64_t)>& visit) {
  if (x == 0) return;
  const auto r_max = static_cast<std::int64_t>(x * x);
  const auto s_max = static_cast<std::int64_t>(checked_mul(static_cast<std::int64_t>(x * x), static_cast<std::int64_t>(x)));
  // A prime to strip has q^4 <= X^2 (r != 0) or q^6 <= X^3 (r = 0).
  std::vector<std::pair<std::int64_t, std::int64_t>> strip;  // (q^4, q^6)
  for (std::uint32_t q : primes_up_to(static_cast<std::uint32_t>(isqrt(x)))) {
    const std::int64_t q4 = std::int64_t{q} * q * q * q;
    strip.emplace_back(q4, q4 * q * q);
  }
  for (std::int64_t r = -r_max; r <= r_max; ++r) {
    const __int128 four_r3 = static_cast<__int128>(4) * r * r * r;
    for (std::int64_t s = -s_max; s <= s_max; ++s) {
      if (four_r3 + static_cast<__int128>(27) * s * s == 0) continue;
      bool reducible = false;
      for (auto [q4, q6] : strip) {
        if (r % q4 == 0 && s % q6 == 0) {
          reducible = true;
          break;
        }
      }
      if (!reducible) visit(r, s);
    }
  }
}

std::vector<RationalCurve> enumerate_family(std::uint64_t x) {
  std::vector<RationalCurve> out;
  for_each_family_member(x, [&](std::int64_t r, std::int64_t s) {
    BigInt rb(static_cast<long>(r)), sb(static_cast<long>(s));
    out.push_back({rb, sb, height_of(rb, sb), disc_of(rb, sb)});
  });
  return out;
}

std::uint64_t family_count(std::uint64_t x) {
  std::uint64_t count = 0;
  for_each_family_member(x, [&](std::int64_t, std::int64_t) { ++count; });
  return count;
}

// ---------------------------------------------------------------------------

RationalPoly::RationalPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  for (auto& c : c_) c.canonicalize();
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational RationalPoly::eval(const Rational& t) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::string RationalPoly::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << c_[i].get_str() << ")";
    if (i > 0) os << "*t";
    if (i > 1) os << "^" << i;
  }
  return first ? "0" : os.str();
}

TorsionPolynomials torsion_polynomials(const Rational& g2, const Rational& g3) {
  if (g2 * g2 * g2 - 27 * g3 * g3 == 0) throw Error(Errc::SingularInput, "g2^3 - 27 g3^2 = 0");
  const Rational g2sq = g2 * g2;
  TorsionPolynomials out;
  out.f4 = RationalPoly({(g2sq * g2 - 32 * g3 * g3) / 64, -(g2 * g3) / 4, -(5 * g2sq) / 16, -5 * g3,
                         -(5 * g2) / 4, 0, 1});
  out.f1 = RationalPoly({81 * g2sq * g2sq / 256, -37 * g2sq * g2 / 16 + 108 * g3 * g3, 27 * g2sq / 8, 3 * g2, 1});
  return out;
}

namespace {

Rational es_quadratic(const Rational& s) { return 16 * s * s + 56 * s + 81; }

// Smallest u > 0 with r u^4 and s u^6 integral.
BigInt integral_scale(const Rational& r, const Rational& s) {
  BigInt u = 1;
  BigInt den = r.get_den() * s.get_den();
  for (auto [q, e] : factorize(den.get_ui())) {
    (void)e;
    int vr = 0, vs = 0;
    BigInt dr = r.get_den(), ds = s.get_den();
    while (mpz_divisible_ui_p(dr.get_mpz_t(), q)) {
      dr /= static_cast<unsigned long>(q);
      ++vr;
    }
    while (mpz_divisible_ui_p(ds.get_mpz_t(), q)) {
      ds /= static_cast<unsigned long>(q);
      ++vs;
    }
    const int k = std::max((vr + 3) / 4, (vs + 5) / 6);
    for (int i = 0; i < k; ++i) u *= static_cast<unsigned long>(q);
  }
  return u;
}

}  // namespace

EsCurve es_curve(const Rational& s) {
  if (s == 0 || es_quadratic(s) == 0 || 4 * s + 3 == 0) {
    throw Error(Errc::DegenerateParameter, "E_s is degenerate at s = " + s.get_str());
  }
  EsCurve out;
  out.s = s;
  const Rational q = es_quadratic(s);
  out.a_coeff = q / (3 * s);
  out.b_coeff = q * q * (4 * s - 1) / (864 * s * s);
  out.a_coeff.canonicalize();
  out.b_coeff.canonicalize();
  out.g2 = -out.a_coeff;
  out.g3 = -out.b_coeff;
  out.disc = out.g2 * out.g2 * out.g2 - 27 * out.g3 * out.g3;
  out.j = 1728 * out.g2 * out.g2 * out.g2 / out.disc;
  out.disc.canonicalize();
  out.j.canonicalize();

  // y^2 = 4x^3 + A x + B becomes y^2 = x^3 + (A/4) x + B/4 after y -> 2y.
  const Rational r = out.a_coeff / 4, c = out.b_coeff / 4;
  const BigInt u = integral_scale(r, c);
  const BigInt u2 = u * u, u4 = u2 * u2;
  const Rational ri = r * Rational(u4), ci = c * Rational(u4 * u2);
  out.integral_model = canonical_model(ri.get_num(), ci.get_num());
  return out;
}

EsIdentityReport verify_es_identities(const Rational& s) {
  const EsCurve e = es_curve(s);
  EsIdentityReport rep;
  rep.s = s;
  rep.f1_root = -(27 + Rational(56, 3) * s + Rational(16, 3) * s * s);
  rep.f1_root.canonicalize();
  const TorsionPolynomials polys = torsion_polynomials(e.g2, e.g3);
  rep.f1_linear_factor = polys.f1.eval(rep.f1_root) == 0;

  const Rational q = es_quadratic(s);
  const Rational t = 4 * s + 3;
  const Rational t4 = t * t * t * t;
  rep.disc_identity = e.disc == -(q * q * q) * t4 / (27648 * s * s * s * s);
  rep.j_identity = e.j == 1769472 * s / t4;
  return rep;
}

EsMod4Report es_mod4_image(const Rational& s, std::uint64_t bound) {
  const EsCurve e = es_curve(s);
  EsMod4Report rep;
  rep.s = s;
  rep.model = e.integral_model;
  rep.bound = bound;
  const auto table4 = shared_class_table(4);
  const auto table2 = shared_class_table(2);
  std::vector<std::size_t> classes4, classes2;
  for (const auto& fd : sample_frobenius(rep.model.r, rep.model.s, rep.model.disc, bound)) {
    classes4.push_back(table4->class_of(MatrixModN::from(fd.sigma, 4)));
    classes2.push_back(table2->class_of(MatrixModN::from(fd.sigma, 2)));
  }
  rep.generators_used = classes4.size();
  const ClassCover cover4 = class_cover(*table4, classes4, false);
  rep.index_at_4 = cover4.max_index;
  rep.full_at_2 = !class_cover(*table2, classes2, true).proper;
  rep.cover_surjects_mod_2 = cover4.smallest && cover4.smallest->reduce(2).is_full();
  return rep;
}

}  // namespace serrelab
