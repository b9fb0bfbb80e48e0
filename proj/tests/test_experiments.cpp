#include <doctest.h>

#include <cmath>
#include <map>
#include <numeric>

#include "oracles.hpp"
#include "serrelab/ec_fp.hpp"
#include "serrelab/error.hpp"
#include "serrelab/experiments.hpp"

using namespace serrelab;

TEST_CASE("class counts over a prime field") {
  for (std::uint32_t n : {2u, 3u, 4u}) {
    const auto table = conjugacy_classes(n);
    for (std::uint32_t p : primes_up_to(60)) {
      if (p < 5) continue;
      INFO("N = " << n << ", p = " << p);
      const auto counts = omega_enumerate_all(p, table);
      CHECK(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}) == std::uint64_t{p} * p - p);
      for (std::size_t i = 0; i < counts.size(); ++i) {
        const auto& desc = table.classes()[i].descriptor;
        CHECK(omega_formula(p, desc) == counts[i]);
        if (desc.det() != p % n) CHECK(counts[i] == 0);
      }
      CHECK(omega_enumerate(p, table, 1) == counts[1]);
    }
  }
}

TEST_CASE("trivial level") {
  const auto table = conjugacy_classes(1);
  REQUIRE(table.classes().size() == 1);
  for (std::uint32_t p : {5u, 7u, 101u, 211u}) CHECK(omega_formula(p, table.classes()[0].descriptor) == p * p - p);
}

TEST_CASE("quadratic twists negate Frobenius") {
  for (std::uint32_t n : {2u, 3u}) {
    const auto table = conjugacy_classes(n);
    for (std::uint32_t p : primes_up_to(100)) {
      if (p < 5) continue;
      const auto counts = omega_enumerate_all(p, table);
      for (std::size_t i = 0; i < counts.size(); ++i) {
        const auto twin = table.class_of(MatrixModN::scalar(n, -1) * table.classes()[i].representative);
        CHECK(counts[i] == counts[twin]);
      }
    }
  }
}

TEST_CASE("omega reports") {
  const auto table = conjugacy_classes(3);
  const auto rows = omega_reports(13, table, true);
  for (const auto& row : rows) {
    CHECK(row.descriptor.det() == 1);
    REQUIRE(row.enumerated);
    CHECK(BigInt(*row.enumerated) == row.formula);
    const auto& cls = table.classes()[row.class_index];
    CHECK(row.main_term == omega_main_term(13, cls));
    Rational expected(cls.size * 2 * 169, gl2_order(3));
    expected.canonicalize();
    CHECK(row.main_term == expected);
  }
  CHECK(omega_reports(13, table, false).size() == rows.size());
}

TEST_CASE("Deuring counts") {
  CHECK(deuring_count(5, 2, OrderDisc(-4)) == 1);
  CHECK(deuring_count(7, 0, OrderDisc(-7)) == 3);
  CHECK_THROWS_AS(deuring_count(5, 1, OrderDisc(-4)), Error);
  CHECK_THROWS_AS(deuring_count(5, 5, OrderDisc(-3)), Error);

  for (std::uint32_t p : primes_up_to(50)) {
    if (p < 5) continue;
    std::map<std::int64_t, std::uint64_t> direct;
    for (std::int64_t r = 0; r < p; ++r)
      for (std::int64_t s = 0; s < p; ++s)
        if (!is_singular_mod(p, r, s)) ++direct[trace_of_frobenius(CurveFp(p, r, s))];
    const auto hist = trace_histogram(p);
    const auto bound = static_cast<std::int64_t>(isqrt(4 * std::uint64_t{p}));
    for (std::int64_t t = -bound; t <= bound; ++t) {
      if (t * t == 4 * static_cast<std::int64_t>(p)) continue;
      const std::int64_t disc = t * t - 4 * static_cast<std::int64_t>(p);
      std::uint64_t total = 0;
      for (std::int64_t f = 1; f * f <= -disc; ++f) {
        if (disc % (f * f) != 0) continue;
        const std::int64_t q = disc / (f * f);
        if (((q % 4) + 4) % 4 > 1) continue;
        const OrderDisc order(q);
        if (t == 0 && order.conductor() % p == 0) continue;
        total += deuring_count(p, t, order);
      }
      INFO("p = " << p << ", t = " << t);
      CHECK(total == direct[t]);
      CHECK(hist[t + bound] == direct[t]);
    }
  }
}

TEST_CASE("Eichler mass") {
  auto r = eichler_mass(5);
  CHECK(std::abs(r.deviation.get_d()) <= 2 * std::sqrt(5.0));
  r = eichler_mass(7);
  CHECK(std::abs(r.deviation.get_d()) <= 2 * std::sqrt(7.0));
  for (std::uint32_t p : primes_up_to(300)) {
    if (p < 5) continue;
    r = eichler_mass(p);
    CHECK(r.deviation == r.mass - 2 * p);
    // (p - 1) / 2 times the mass counts every curve once.
    CHECK(r.mass == 2 * p);
  }
}

TEST_CASE("prime counts along a curve") {
  const auto e = canonical_model(1, 1);
  CHECK(pi_e_count(e, 4, conjugacy_classes(2), 0).count == 0);
  const auto trivial = pi_e_count(e, 100, conjugacy_classes(1), 0);
  CHECK(trivial.count == trivial.good);
  CHECK(trivial.good + trivial.skipped == 25);
  CHECK(trivial.skipped == 3);  // 2, 3 and 31

  const auto table = conjugacy_classes(2);
  std::uint64_t sum = 0;
  for (std::size_t i = 0; i < table.classes().size(); ++i) {
    const auto c = pi_e_count(e, 50, table, i);
    CHECK(c.good == 12);
    sum += c.count;
  }
  CHECK(sum == 12);
  CHECK(primes_in_progression(100, 4, 1) == 11);
  CHECK(primes_in_progression(100, 4, 3) == 13);
  CHECK(primes_in_progression(100, 1, 0) == 25);
}

TEST_CASE("mean square statistic") {
  const auto table = conjugacy_classes(2);
  CHECK_THROWS_AS(chebotarev_mean_square(100, table, 0, {}), Error);
  const auto family = enumerate_family(2);

  // At level 1 the only deviation comes from skipped primes.
  const auto trivial = chebotarev_mean_square(100, conjugacy_classes(1), 0, family);
  Rational expected = 0;
  for (const auto& e : family) {
    std::uint64_t skipped = 0;
    for (std::uint32_t p : primes_up_to(100))
      if (p < 5 || mpz_divisible_ui_p(e.disc.get_mpz_t(), p)) ++skipped;
    expected += skipped * skipped;
  }
  expected /= family.size();
  CHECK(trivial.mean_square == expected);

  const auto serial = chebotarev_mean_square_all(100, table, family, {.threads = 1});
  const auto parallel = chebotarev_mean_square_all(100, table, family, {.threads = 3});
  REQUIRE(serial.size() == table.classes().size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].mean_square == parallel[i].mean_square);
    CHECK(serial[i].mean_square >= 0);
    CHECK(serial[i].bound_ratio == serial[i].mean_square / (256 * 100));
    CHECK_FALSE(serial[i].sampled);
    CHECK(serial[i].curves_used == family.size());
  }

  // Direct recomputation for one class.
  const auto& one = serial[2];
  const auto& cls = table.classes()[2];
  const Rational share(cls.size, gl2_order(2));
  const Rational target = share * primes_in_progression(100, 2, cls.descriptor.det());
  Rational total = 0;
  for (const auto& e : family) {
    const Rational dev = Rational(pi_e_count(e, 100, table, 2).count) - target;
    total += dev * dev;
  }
  CHECK(one.mean_square == total / family.size());
  CHECK(one.expected == target);

  const auto a = chebotarev_mean_square(100, table, 1, family, {.cap = 50, .seed = 9});
  const auto b = chebotarev_mean_square(100, table, 1, family, {.cap = 50, .seed = 9, .threads = 2});
  CHECK(a.sampled);
  CHECK(a.curves_used == 50);
  CHECK(a.mean_square == b.mean_square);
}

TEST_CASE("bounded draws are uniform") {
  std::mt19937_64 rng(1);
  std::vector<int> hits(7, 0);
  for (int i = 0; i < 70000; ++i) ++hits[bounded_draw(rng, 7)];
  for (int h : hits) CHECK(std::abs(h - 10000) < 500);
  CHECK_THROWS_AS(bounded_draw(rng, 0), Error);
}

TEST_CASE("censuses") {
  const auto census = serre_census(1, 37);
  CHECK(census.total == 8);
  CHECK(census.certified <= census.total);
  std::uint64_t failures = 0;
  for (auto f : census.failures_by_condition) failures += f;
  CHECK(census.certified + failures >= census.total);
  for (std::size_t i = 0; i < 4; ++i) CHECK(census.witnessed_by_condition[i] <= census.failures_by_condition[i]);
  CHECK(serre_census(1, 37, 2).certified == census.certified);

  const auto eps = epsilon_n_census(1, 4, 100);
  CHECK(eps.total == 8);
  CHECK(eps.flagged <= eps.total);
}
