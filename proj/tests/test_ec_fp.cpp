#include <doctest.h>

#include <cmath>
#include <map>

#include "oracles.hpp"
#include "serrelab/ec_fp.hpp"
#include "serrelab/error.hpp"

using namespace serrelab;

TEST_CASE("curve construction") {
  CHECK_THROWS_AS(CurveFp(5, 0, 0), Error);
  CHECK_NOTHROW(CurveFp(5, 1, 1));
  CHECK_THROWS_AS(CurveFp(3, 1, 1), Error);
  CHECK_THROWS_AS(CurveFp(9, 1, 1), Error);
  try {
    CurveFp(5, 0, 0);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::SingularCurve);
  }
  try {
    CurveFp(3, 1, 1);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BadCharacteristic);
  }
}

TEST_CASE("traces of small curves") {
  CHECK(trace_of_frobenius(CurveFp(5, 0, 1)) == 0);
  CHECK(trace_of_frobenius(CurveFp(5, 1, 0)) == 2);
  CHECK(trace_of_frobenius(CurveFp(7, -1, 0)) == 0);
  CHECK(point_count(CurveFp(5, 0, 1)) == 6);
  CHECK(point_count(CurveFp(5, 1, 0)) == 4);
  CHECK(point_count(CurveFp(7, -1, 0)) == 8);
}

TEST_CASE("point counts match brute force and the Hasse bound") {
  for (std::uint32_t p : primes_up_to(60)) {
    if (p < 5) continue;
    for (std::int64_t r = 0; r < p; ++r)
      for (std::int64_t s = 0; s < p; ++s) {
        if (is_singular_mod(p, r, s)) continue;
        const CurveFp e(p, r, s);
        CHECK(point_count(e) == oracle::point_count(p, r, s));
      }
  }
  for (std::uint32_t p : primes_up_to(500)) {
    if (p < 5) continue;
    const LegendreTable chi(p);
    for (std::int64_t r = 0; r < p; r += 7)
      for (std::int64_t s = 1; s < p; s += 5) {
        if (is_singular_mod(p, r, s)) continue;
        const auto a = trace_of_frobenius(CurveFp(p, r, s), chi);
        CHECK(static_cast<double>(a * a) <= 4.0 * p);
      }
  }
}

TEST_CASE("traces cancel over all curves") {
  // Quadratic twists pair traces a and -a, so the total trace vanishes.
  const std::uint64_t p = 13;
  std::int64_t total = 0;
  std::map<std::int64_t, int> histogram;
  for (std::uint64_t r = 0; r < p; ++r)
    for (std::uint64_t s = 0; s < p; ++s) {
      if (is_singular_mod(p, r, s)) continue;
      const auto a = trace_of_frobenius(CurveFp(p, static_cast<std::int64_t>(r), static_cast<std::int64_t>(s)));
      total += a;
      ++histogram[a];
    }
  CHECK(total == 0);
  for (auto [a, count] : histogram) CHECK(histogram[-a] == count);
}

TEST_CASE("group law") {
  const CurveFp e(13, 2, 3);
  const auto points = rational_points(e);
  REQUIRE(points.size() == point_count(e));
  const BigInt order(static_cast<unsigned long>(points.size()));
  for (const auto& pt : points) {
    CHECK(on_curve(e, pt));
    CHECK(add(e, pt, PointFp::at_infinity()) == pt);
    CHECK(add(e, pt, negate(e, pt)) == PointFp::at_infinity());
    CHECK(scalar_mul(e, order, pt) == PointFp::at_infinity());
    for (const auto& q : points) {
      CHECK(add(e, pt, q) == add(e, q, pt));
      CHECK(on_curve(e, add(e, pt, q)));
    }
  }
  CHECK_THROWS_AS(add(e, PointFp::affine(0, 0), points.back()), Error);
}

TEST_CASE("division polynomials") {
  const CurveFp e(101, 3, 7);
  CHECK(division_polynomial(e, 1) == PolyModP::constant(101, 1));
  CHECK(division_polynomial(e, 5).degree() == 12);
  for (unsigned n = 3; n <= 15; n += 2) CHECK(division_polynomial(e, n).degree() == static_cast<int>((n * n - 1) / 2));

  const CurveFp f(7, -1, 0);
  CHECK(roots_in_prime_field(f.cubic()) == std::vector<std::uint64_t>{0, 1, 6});

  // Roots of psi_n in F_p are x-coordinates of rational or quadratic-twist
  // points of order n; check the rational ones directly.
  const CurveFp g(31, 2, 5);
  for (unsigned n : {3u, 5u, 7u}) {
    const auto psi = division_polynomial(g, n);
    for (const auto& pt : rational_points(g)) {
      if (pt.infinity) continue;
      const bool killed = scalar_mul(g, BigInt(n), pt).infinity;
      CHECK(killed == (psi.eval(pt.x) == 0));
    }
  }
}

TEST_CASE("division polynomial recurrence is self-consistent") {
  // Even-index terms are stored without their factor y, and y^2 = cubic.
  for (std::uint64_t p : {101, 211}) {
    const CurveFp e(p, 5, 11);
    const auto g = division_polynomial_sequence(e, 20);
    const PolyModP c2 = e.cubic() * e.cubic();
    for (unsigned n = 2; n <= 8; ++n) {
      // psi_{2n+1} = psi_{n+2} psi_n^3 - psi_{n-1} psi_{n+1}^3
      PolyModP t1 = g[n + 2] * g[n] * g[n] * g[n];
      PolyModP t2 = g[n - 1] * g[n + 1] * g[n + 1] * g[n + 1];
      if (n % 2 == 0) t1 = t1 * c2;
      else t2 = t2 * c2;
      CHECK(g[2 * n + 1] == t1 - t2);
      // psi_2 psi_{2n} = psi_n (psi_{n+2} psi_{n-1}^2 - psi_{n-2} psi_{n+1}^2)
      const PolyModP rhs = g[n] * (g[n + 2] * g[n - 1] * g[n - 1] - g[n - 2] * g[n + 1] * g[n + 1]);
      CHECK(g[2 * n].scaled(2) == rhs);
    }
    for (unsigned n = 1; n < 20; ++n) CHECK(division_polynomial(e, n) == g[n]);
  }
}

TEST_CASE("division polynomials agree with the group law") {
  // x([n]P) psi_n(P)^2 = x psi_n(P)^2 - psi_{n-1}(P) psi_{n+1}(P)
  const std::uint64_t p = 97;
  const CurveFp e(p, 3, 8);
  const auto g = division_polynomial_sequence(e, 19);
  for (const auto& pt : rational_points(e)) {
    if (pt.infinity) continue;
    const std::uint64_t y2 = pt.y * pt.y % p;
    for (unsigned n = 2; n <= 17; ++n) {
      std::uint64_t psi_sq = g[n].eval(pt.x) * g[n].eval(pt.x) % p;
      if (n % 2 == 0) psi_sq = psi_sq * y2 % p;
      std::uint64_t neighbours = g[n - 1].eval(pt.x) * g[n + 1].eval(pt.x) % p;
      if (n % 2 == 1) neighbours = neighbours * y2 % p;
      const PointFp q = scalar_mul(e, BigInt(n), pt);
      if (q.infinity) {
        CHECK(psi_sq == 0);
        continue;
      }
      CHECK(q.x * psi_sq % p == (pt.x * psi_sq % p + p - neighbours) % p);
    }
  }
}
